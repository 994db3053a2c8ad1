#include "sj/spectral.hpp"

#include <cmath>

namespace sj {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// nodes by Newton iteration on the Legendre recurrence
GaussLegendre gauss_legendre(int order) {
  GaussLegendre ql;
  ql.nodes.resize(order);
  ql.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    ql.nodes[i] = x;
    ql.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return ql;
}

const GaussLegendre& gl20() {
  static const GaussLegendre g = gauss_legendre(20);
  return g;
}

struct KahanSum {
  cplx sum{0.0, 0.0};
  cplx comp{0.0, 0.0};
  void add(const cplx& value) {
    const cplx y = value - comp;
    const cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

cplx bessel_k(cplx s, cplx z) {
  if (!(z.real() > 0)) throw std::invalid_argument("bessel_k: Re z must be > 0");
  // after t = e^u: K_s(z) = 1/2 int exp(-z cosh u + s u) du
  const double zr = z.real();
  const double sr = std::abs(s.real());

  // log-magnitude envelope L(u) = -zr cosh u + sr u; truncate where it has
  // dropped 45 nats below its maximum
  const double ustar = std::asinh(sr / zr);
  const double lmax = -zr * std::cosh(ustar) + sr * ustar;
  double T = ustar;
  while (-zr * std::cosh(T) + sr * T > lmax - 45.0) {
    T += 0.25;
    if (T > 60.0)
      throw std::runtime_error("bessel_k: integrand tail does not decay (diagnostic T > 60)");
  }

  // panel boundaries graded by the local phase rate |Im z| sinh u + |Im s|
  std::vector<double> bounds{0.0};
  while (bounds.back() < T) {
    const double u = bounds.back();
    const double rate = std::abs(z.imag()) * std::sinh(u + 0.4) + std::abs(s.imag());
    const double width = std::min(0.4, std::max(1e-4, 5.0 / (1.0 + rate)));
    bounds.push_back(std::min(T, u + width));
  }

  const GaussLegendre& gl = gl20();
  KahanSum acc;
  for (std::size_t p = 0; p + 1 < bounds.size(); ++p) {
    const double a = bounds[p], b = bounds[p + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < 20; ++i) {
      const double up = mid + half * gl.nodes[i];
      acc.add(half * gl.weights[i] * std::exp(-z * std::cosh(up) + s * up));
      const double um = -mid - half * gl.nodes[i];
      acc.add(half * gl.weights[i] * std::exp(-z * std::cosh(um) + s * um));
    }
  }
  return 0.5 * acc.sum;
}

namespace {

double px(const JacobiPoint& p) { return p.Z()(0, 0).real(); }
double py(const JacobiPoint& p) { return p.Z()(0, 0).imag(); }
double pu(const JacobiPoint& p) { return p.W()(0, 0).real(); }
double pv(const JacobiPoint& p) { return p.W()(0, 0).imag(); }

cplx cpow(double base, cplx e) { return std::pow(cplx(base, 0.0), e); }

}  // namespace

std::vector<EigenCandidate> eigenfunction_catalog(cplx s, double a) {
  if (a == 0.0) throw std::invalid_argument("eigenfunction_catalog: a must be nonzero");
  const bool s_real = s.imag() == 0.0;
  std::vector<EigenCandidate> out;

  const double abs_a = std::abs(a);
  out.push_back({ScalarField{[s, a, abs_a](const JacobiPoint& p) {
                               return std::sqrt(py(p)) *
                                      bessel_k(s - 0.5, 2.0 * kPi * abs_a * py(p)) *
                                      std::exp(cplx(0.0, 2.0 * kPi * a * px(p)));
                             },
                             false, "sqrt(y)*K_{s-1/2}(2pi|a|y)*e(ax)"},
                 s * (s - 1.0), "bessel"});

  out.push_back({ScalarField{[s](const JacobiPoint& p) { return cpow(py(p), s); }, s_real, "y^s"},
                 s * (s - 1.0), "y^s"});
  out.push_back(
      {ScalarField{[s](const JacobiPoint& p) { return cpow(py(p), s) * px(p); }, s_real, "y^s x"},
       s * (s - 1.0), "y^s*x"});
  out.push_back(
      {ScalarField{[s](const JacobiPoint& p) { return cpow(py(p), s) * pu(p); }, s_real, "y^s u"},
       s * (s - 1.0), "y^s*u"});

  out.push_back(
      {ScalarField{[s](const JacobiPoint& p) { return cpow(py(p), s) * pv(p); }, s_real, "y^s v"},
       s * (s + 1.0), "y^s*v"});
  out.push_back({ScalarField{[s](const JacobiPoint& p) { return cpow(py(p), s) * pu(p) * pv(p); },
                             s_real, "y^s uv"},
                 s * (s + 1.0), "y^s*u*v"});
  out.push_back({ScalarField{[s](const JacobiPoint& p) { return cpow(py(p), s) * px(p) * pv(p); },
                             s_real, "y^s xv"},
                 s * (s + 1.0), "y^s*x*v"});

  const auto flat = [](cplx (*fn)(const JacobiPoint&), const char* label) {
    return EigenCandidate{ScalarField{fn, true, label}, cplx(0.0, 0.0), label};
  };
  out.push_back(flat([](const JacobiPoint& p) { return cplx(px(p), 0); }, "x"));
  out.push_back(flat([](const JacobiPoint& p) { return cplx(py(p), 0); }, "y"));
  out.push_back(flat([](const JacobiPoint& p) { return cplx(pu(p), 0); }, "u"));
  out.push_back(flat([](const JacobiPoint& p) { return cplx(pv(p), 0); }, "v"));
  out.push_back(flat([](const JacobiPoint& p) { return cplx(px(p) * pv(p), 0); }, "x*v"));
  out.push_back(flat([](const JacobiPoint& p) { return cplx(pu(p) * pv(p), 0); }, "u*v"));
  return out;
}

EigenReport check_eigenfunction(const EigenCandidate& c, const std::vector<JacobiPoint>& points,
                                const MetricParams& params, double tol, const FdSteps& steps) {
  EigenReport report;
  report.candidate = c.label;
  report.points = static_cast<int>(points.size());
  for (const JacobiPoint& p : points) {
    const cplx lap = laplacian_apply(c.field, p, params, steps);
    const cplx target = c.eigenvalue * c.field(p);
    const double residual = std::abs(lap - target) / (1.0 + std::abs(target));
    report.max_residual = std::max(report.max_residual, residual);
  }
  report.pass = report.max_residual <= tol;
  return report;
}

TorusField torus_basis_fn(const SiegelPoint& omega, const TorusBasisIndex& idx) {
  const int n = omega.n();
  const int m = static_cast<int>(idx.A.rows());
  if (idx.A.cols() != n || idx.B.rows() != m || idx.B.cols() != n)
    throw std::invalid_argument("torus_basis_fn: index shape mismatch");
  const RMat x = omega.real_part();
  const RMat yinv = omega.imag_part().inverse();
  const RMat a = idx.A.cast<double>();
  const RMat b = idx.B.cast<double>();
  const RMat phase_v = (b - a * x) * yinv;  // m x n, pairs with tV
  return [a, phase_v, m, n](const CMat& zc) {
    if (zc.rows() != m || zc.cols() != n)
      throw std::invalid_argument("torus basis function: argument shape mismatch");
    const RMat u = zc.real();
    const RMat v = zc.imag();
    double exponent = 0.0;
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < n; ++l) exponent += a(k, l) * u(k, l) + phase_v(k, l) * v(k, l);
    return std::exp(cplx(0.0, 2.0 * kPi * exponent));
  };
}

cplx torus_laplacian_apply(const SiegelPoint& omega, const TorusField& f, const CMat& Zc,
                           const FdSteps& steps) {
  const int n = omega.n();
  const int m = static_cast<int>(Zc.rows());
  if (Zc.cols() != n) throw std::invalid_argument("torus_laplacian_apply: shape mismatch");
  const int dim = 2 * m * n;

  const auto displaced = [&](int i, double hi, int j, double hj) {
    CMat z = Zc;
    const auto bump = [&](int idx, double h) {
      const bool imag = idx >= m * n;
      const int flat = imag ? idx - m * n : idx;
      z(flat / n, flat % n) += imag ? cplx(0, h) : cplx(h, 0);
    };
    bump(i, hi);
    if (j >= 0) bump(j, hj);
    return f(z);
  };

  std::vector<double> h(dim);
  for (int i = 0; i < dim; ++i) {
    const bool imag = i >= m * n;
    const int flat = imag ? i - m * n : i;
    const double c = imag ? Zc(flat / n, flat % n).imag() : Zc(flat / n, flat % n).real();
    h[i] = steps.second * (1.0 + std::abs(c));
  }

  const cplx f0 = f(Zc);
  CMat hess(dim, dim);
  for (int i = 0; i < dim; ++i) {
    hess(i, i) = (displaced(i, h[i], -1, 0) - 2.0 * f0 + displaced(i, -h[i], -1, 0)) / (h[i] * h[i]);
    for (int j = i + 1; j < dim; ++j) {
      const cplx mixed = (displaced(i, h[i], j, h[j]) - displaced(i, h[i], j, -h[j]) -
                          displaced(i, -h[i], j, h[j]) + displaced(i, -h[i], j, -h[j])) /
                         (4.0 * h[i] * h[j]);
      hess(i, j) = hess(j, i) = mixed;
    }
  }

  const RMat y = omega.imag_part();
  const auto uidx = [&](int k, int l) { return k * n + l; };
  const auto vidx = [&](int k, int l) { return m * n + k * n + l; };
  cplx total = 0.0;
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < n; ++l)
      for (int a = 0; a < n; ++a) {
        const cplx d2 = 0.25 * (hess(uidx(k, l), uidx(k, a)) + hess(vidx(k, l), vidx(k, a)) +
                                cplx(0, 1) * (hess(uidx(k, l), vidx(k, a)) -
                                              hess(vidx(k, l), uidx(k, a))));
        total += y(a, l) * d2;
      }
  return total;
}

cplx torus_inner_product(const SiegelPoint& omega, int m, const TorusField& f,
                         const TorusField& g, const QuadratureGrid& grid) {
  const int n = omega.n();
  const int dim = 2 * m * n;
  const int P = grid.points_per_direction;

  std::vector<int> idx(dim, 0);
  KahanSum acc;
  long long count = 0;
  while (true) {
    RMat lambda(m, n), mu(m, n);
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < n; ++l) {
        lambda(k, l) = static_cast<double>(idx[k * n + l]) / P;
        mu(k, l) = static_cast<double>(idx[m * n + k * n + l]) / P;
      }
    const CMat z = lambda.cast<cplx>() + mu.cast<cplx>() * omega.Z();
    acc.add(f(z) * std::conj(g(z)));
    ++count;
    int d = dim - 1;
    while (d >= 0 && idx[d] == P - 1) idx[d--] = 0;
    if (d < 0) break;
    ++idx[d];
  }
  return acc.sum / static_cast<double>(count);
}

RiemannCheck riemann_conditions(const CMat& omega) {
  const int n = static_cast<int>(omega.rows());
  if (omega.cols() != n) throw std::invalid_argument("riemann_conditions: Omega must be square");
  CMat period(n, 2 * n);
  period.leftCols(n) = CMat::Identity(n, n);
  period.rightCols(n) = omega;
  CMat j = CMat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = CMat::Identity(n, n);
  j.bottomLeftCorner(n, n) = -CMat::Identity(n, n);

  RiemannCheck out;
  const CMat rc1 = period * j * period.transpose();
  out.rc1_residual = rc1.cwiseAbs().maxCoeff();
  const CMat h = cplx(0, 1) * period * j * period.conjugate().transpose();  // -1/i Om* J tOmbar*
  const CMat herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(herm);
  out.rc2_min_eigenvalue = es.eigenvalues().minCoeff();
  const double scale = 1.0 + omega.cwiseAbs().maxCoeff();
  out.ok = out.rc1_residual <= 1e-10 * scale && out.rc2_min_eigenvalue > 0.0;
  return out;
}

}  // namespace sj
