#include "sj/geometry.hpp"

#include <cmath>

namespace sj {

namespace {

// weight (1 + delta_uv)/2 carried by Z-type Wirtinger entries
inline double zweight(int i, int j) { return i == j ? 1.0 : 0.5; }

void check_real(const cplx& value, double tol, const char* what) {
  if (std::abs(value.imag()) > tol * (1.0 + std::abs(value.real())))
    throw std::logic_error(std::string(what) + ": imaginary residue " +
                           std::to_string(value.imag()));
}

struct MetricContext {
  CMat Yinv;   // n x n
  CMat V;      // m x n
  CMat VtV;    // Yinv tV V Yinv premultiplier piece: tV V
  explicit MetricContext(const JacobiPoint& p) {
    Yinv = p.Y().inverse().cast<cplx>();
    V = p.V().cast<cplx>();
    VtV = V.transpose() * V;
  }
};

cplx term_base(const MetricContext& c, const CMat& dZ) {
  return (c.Yinv * dZ * c.Yinv * dZ.conjugate()).trace();
}

cplx term_jacobi(const MetricContext& c, const CMat& dZ, const CMat& dW) {
  const CMat dWc = dW.conjugate();
  const cplx b = (c.Yinv * c.VtV * c.Yinv * dZ * c.Yinv * dZ.conjugate()).trace();
  const cplx cc = (c.Yinv * dW.transpose() * dWc).trace();
  const cplx d = -(c.V * c.Yinv * dZ * c.Yinv * dWc.transpose()).trace() -
                 (c.V * c.Yinv * dZ.conjugate() * c.Yinv * dW.transpose()).trace();
  return b + cc + d;
}

TangentVector tangent_add(const TangentVector& a, const TangentVector& b, double sign) {
  return TangentVector(a.dZ + sign * b.dZ, a.dW + sign * b.dW);
}

}  // namespace

Chart::Chart(int n, int m) : n_(n), m_(m) {
  if (n < 1 || m < 0) throw std::invalid_argument("Chart: need n >= 1, m >= 0");
  dim_ = n * (n + 1) + 2 * m * n;
  labels_.reserve(dim_);
  for (const char* base : {"x", "y"})
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        labels_.push_back(std::string(base) + std::to_string(i + 1) + std::to_string(j + 1));
  for (const char* base : {"u", "v"})
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < n; ++l)
        labels_.push_back(std::string(base) + std::to_string(k + 1) + std::to_string(l + 1));
}

RVec Chart::point_coords(const JacobiPoint& p) const {
  return tangent_coords(TangentVector(p.Z(), p.W()));
}

JacobiPoint Chart::point_from_coords(const RVec& c) const {
  const TangentVector t = tangent_from_coords(c);
  return JacobiPoint(SiegelPoint(t.dZ), t.dW);
}

RVec Chart::tangent_coords(const TangentVector& v) const {
  if (v.n() != n_ || v.m() != m_) throw std::invalid_argument("Chart: tangent shape mismatch");
  RVec c(dim_);
  int idx = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) c[idx++] = v.dZ(i, j).real();
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) c[idx++] = v.dZ(i, j).imag();
  for (int k = 0; k < m_; ++k)
    for (int l = 0; l < n_; ++l) c[idx++] = v.dW(k, l).real();
  for (int k = 0; k < m_; ++k)
    for (int l = 0; l < n_; ++l) c[idx++] = v.dW(k, l).imag();
  return c;
}

TangentVector Chart::tangent_from_coords(const RVec& c) const {
  if (c.size() != dim_) throw std::invalid_argument("Chart: coordinate size mismatch");
  CMat dZ = CMat::Zero(n_, n_);
  CMat dW = CMat::Zero(m_, n_);
  int idx = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) {
      dZ(i, j) += c[idx];
      if (i != j) dZ(j, i) += c[idx];
      ++idx;
    }
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) {
      dZ(i, j) += cplx(0, c[idx]);
      if (i != j) dZ(j, i) += cplx(0, c[idx]);
      ++idx;
    }
  for (int k = 0; k < m_; ++k)
    for (int l = 0; l < n_; ++l) dW(k, l) += c[idx++];
  for (int k = 0; k < m_; ++k)
    for (int l = 0; l < n_; ++l) dW(k, l) += cplx(0, c[idx++]);
  return TangentVector(dZ, dW);
}

TangentVector Chart::basis_tangent(int i) const {
  RVec c = RVec::Zero(dim_);
  c[i] = 1.0;
  return tangent_from_coords(c);
}

JacobiPoint Chart::displaced(const JacobiPoint& p, const RVec& delta) const {
  const TangentVector t = tangent_from_coords(delta);
  return JacobiPoint(SiegelPoint(p.Z() + t.dZ), p.W() + t.dW);
}

double metric_term_base(const JacobiPoint& p, const TangentVector& v) {
  const MetricContext c(p);
  const cplx t = term_base(c, v.dZ);
  check_real(t, 1e-10, "metric_term_base");
  return t.real();
}

double metric_term_jacobi(const JacobiPoint& p, const TangentVector& v) {
  const MetricContext c(p);
  const cplx t = term_jacobi(c, v.dZ, v.dW);
  check_real(t, 1e-10, "metric_term_jacobi");
  return t.real();
}

double metric_quadratic_form(const JacobiPoint& p, const TangentVector& v,
                             const MetricParams& params) {
  const MetricContext c(p);
  const cplx t = params.A * term_base(c, v.dZ) + params.B * term_jacobi(c, v.dZ, v.dW);
  check_real(t, 1e-10, "metric_quadratic_form");
  return t.real();
}

MetricTensor metric_tensor(const JacobiPoint& p, const MetricParams& params) {
  const Chart chart(p.n(), p.m());
  const int N = chart.dim();
  const MetricContext ctx(p);
  const auto q = [&](const TangentVector& v) {
    const cplx t = params.A * term_base(ctx, v.dZ) + params.B * term_jacobi(ctx, v.dZ, v.dW);
    check_real(t, 1e-10, "metric_tensor");
    return t.real();
  };
  std::vector<TangentVector> basis;
  basis.reserve(N);
  for (int i = 0; i < N; ++i) basis.push_back(chart.basis_tangent(i));
  RMat g(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      const double qp = q(tangent_add(basis[i], basis[j], +1.0));
      const double qm = q(tangent_add(basis[i], basis[j], -1.0));
      g(i, j) = g(j, i) = 0.25 * (qp - qm);
    }
  Eigen::LLT<RMat> llt(g);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("metric_tensor: Cholesky failed (not positive definite)");
  return MetricTensor{std::move(g), chart, p};
}

MetricTensor pullback_metric(const JacobiGroupElement& g_elem, const JacobiPoint& p,
                             const MetricParams& params) {
  const Chart chart(p.n(), p.m());
  const int N = chart.dim();
  const MetricTensor at_image = metric_tensor(act_jacobi(g_elem, p), params);
  RMat jac(N, N);
  for (int j = 0; j < N; ++j)
    jac.col(j) = chart.tangent_coords(tangent_map(g_elem, p, chart.basis_tangent(j)));
  return MetricTensor{symmetrized(RMat(jac.transpose() * at_image.g * jac)), chart, p};
}

double volume_density(const JacobiPoint& p) {
  return std::pow(p.Y().determinant(), -(p.n() + p.m() + 1));
}

namespace {

struct ChartDerivs {
  cplx f0;
  CVec grad;
  CMat hess;
};

// central-difference gradient and Hessian of f in chart coordinates
ChartDerivs chart_derivatives(const ScalarField& f, const JacobiPoint& p, const Chart& chart,
                              const FdSteps& steps) {
  const int N = chart.dim();
  const RVec c0 = chart.point_coords(p);
  const auto eval = [&](int i, double hi, int j, double hj) {
    RVec delta = RVec::Zero(N);
    if (i >= 0) delta[i] += hi;
    if (j >= 0) delta[j] += hj;
    return f(chart.displaced(p, delta));
  };
  ChartDerivs d;
  d.f0 = f(p);
  d.grad = CVec(N);
  d.hess = CMat(N, N);
  for (int i = 0; i < N; ++i) {
    const double h = steps.first * (1.0 + std::abs(c0[i]));
    d.grad[i] = (eval(i, h, -1, 0) - eval(i, -h, -1, 0)) / (2.0 * h);
  }
  for (int i = 0; i < N; ++i) {
    const double hi = steps.second * (1.0 + std::abs(c0[i]));
    d.hess(i, i) = (eval(i, hi, -1, 0) - 2.0 * d.f0 + eval(i, -hi, -1, 0)) / (hi * hi);
    for (int j = i + 1; j < N; ++j) {
      const double hj = steps.second * (1.0 + std::abs(c0[j]));
      const cplx mixed = (eval(i, hi, j, hj) - eval(i, hi, j, -hj) - eval(i, -hi, j, hj) +
                          eval(i, -hi, j, -hj)) /
                         (4.0 * hi * hj);
      d.hess(i, j) = d.hess(j, i) = mixed;
    }
  }
  return d;
}

}  // namespace

WirtingerCalculus::WirtingerCalculus(const ScalarField& f, const JacobiPoint& p,
                                     const FdSteps& steps)
    : chart_(p.n(), p.m()) {
  coords_ = chart_.point_coords(p);
  const ChartDerivs d = chart_derivatives(f, p, chart_, steps);
  grad_ = d.grad;
  hess_ = d.hess;
}

int WirtingerCalculus::zidx(int i, int j, bool imag) const {
  if (i > j) std::swap(i, j);
  const int n = chart_.n();
  // offset of pair (i,j), i <= j, in lexicographic order
  const int pair = i * n - i * (i - 1) / 2 + (j - i);
  return pair + (imag ? n * (n + 1) / 2 : 0);
}

int WirtingerCalculus::widx(int k, int l, bool imag) const {
  const int n = chart_.n(), m = chart_.m();
  return n * (n + 1) + k * n + l + (imag ? m * n : 0);
}

CMat WirtingerCalculus::first(Wirt which) const {
  const int n = chart_.n(), m = chart_.m();
  const cplx half(0.5, 0.0), ihalf(0.0, 0.5);
  if (which == Wirt::Z || which == Wirt::Zbar) {
    const double sgn = (which == Wirt::Z) ? -1.0 : 1.0;
    CMat out(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(i, j) = zweight(i, j) *
                    (half * grad_[zidx(i, j, false)] + sgn * ihalf * grad_[zidx(i, j, true)]);
    return out;
  }
  const double sgn = (which == Wirt::W) ? -1.0 : 1.0;
  CMat out(m, n);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < n; ++l)
      out(k, l) = half * grad_[widx(k, l, false)] + sgn * ihalf * grad_[widx(k, l, true)];
  return out;
}

cplx WirtingerCalculus::d2_z_zbar(int i1, int j1, int i2, int j2) const {
  const int xa = zidx(i1, j1, false), ya = zidx(i1, j1, true);
  const int xb = zidx(i2, j2, false), yb = zidx(i2, j2, true);
  return 0.25 * (hess_(xa, xb) + hess_(ya, yb) + cplx(0, 1) * (hess_(xa, yb) - hess_(ya, xb)));
}

cplx WirtingerCalculus::d2_w_wbar(int k1, int l1, int k2, int l2) const {
  const int ua = widx(k1, l1, false), va = widx(k1, l1, true);
  const int ub = widx(k2, l2, false), vb = widx(k2, l2, true);
  return 0.25 * (hess_(ua, ub) + hess_(va, vb) + cplx(0, 1) * (hess_(ua, vb) - hess_(va, ub)));
}

cplx WirtingerCalculus::d2_zbar_w(int i, int j, int k, int l) const {
  const int xa = zidx(i, j, false), ya = zidx(i, j, true);
  const int ub = widx(k, l, false), vb = widx(k, l, true);
  return 0.25 * (hess_(xa, ub) + hess_(ya, vb) + cplx(0, 1) * (hess_(ya, ub) - hess_(xa, vb)));
}

cplx WirtingerCalculus::d2_wbar_z(int k, int l, int i, int j) const {
  const int ua = widx(k, l, false), va = widx(k, l, true);
  const int xb = zidx(i, j, false), yb = zidx(i, j, true);
  return 0.25 * (hess_(ua, xb) + hess_(va, yb) + cplx(0, 1) * (hess_(va, xb) - hess_(ua, yb)));
}

CMat wirtinger_first(const ScalarField& f, const JacobiPoint& p, Wirt which,
                     const FdSteps& steps) {
  return WirtingerCalculus(f, p, steps).first(which);
}

LaplacianTerms laplacian_terms(const ScalarField& f, const JacobiPoint& p, const FdSteps& steps) {
  const int n = p.n(), m = p.m();
  const RMat Y = p.Y();
  const RMat V = p.V();
  const RMat Q = V * Y.inverse() * V.transpose();  // m x m
  const WirtingerCalculus wc(f, p, steps);

  LaplacianTerms t;
  // alpha = 4 sum Y_ij Y_kl w(k,i) w(l,j) d2f/dz_ki dzb_lj
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          t.alpha += 4.0 * Y(i, j) * Y(k, l) * zweight(k, i) * zweight(l, j) *
                     wc.d2_z_zbar(k, i, l, j);
  // beta = 4 sum_k sum_{l,a} Y_al d2f/dw_kl dwb_ka
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < n; ++l)
      for (int a = 0; a < n; ++a) t.beta += 4.0 * Y(a, l) * wc.d2_w_wbar(k, l, k, a);
  // gamma = 4 sum_{a,b} sum_{c,d} (V Y^-1 tV)_ab Y_cd d2f/dw_ac dwb_bd
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          t.gamma += 4.0 * Q(a, b) * Y(c, d) * wc.d2_w_wbar(a, c, b, d);
  // delta = 4 sum_a sum_{b,c,d} V_ab Y_cd w(d,b) d2f/dzb_db dw_ac
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          t.delta += 4.0 * V(a, b) * Y(c, d) * zweight(d, b) * wc.d2_zbar_w(d, b, a, c);
  // epsilon = 4 sum_{a,c,d} sum_b V_ba Y_cd w(c,a) d2f/dwb_bd dz_ca
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d)
        for (int b = 0; b < m; ++b)
          t.epsilon += 4.0 * V(b, a) * Y(c, d) * zweight(c, a) * wc.d2_wbar_z(b, d, c, a);
  return t;
}

cplx laplacian_apply(const ScalarField& f, const JacobiPoint& p, const MetricParams& params,
                     const FdSteps& steps) {
  const cplx value = laplacian_terms(f, p, steps).total(params);
  if (f.real_valued) check_real(value, 1e-8, "laplacian_apply");
  return value;
}

double laplace_beltrami_apply(const ScalarField& f, const JacobiPoint& p,
                              const MetricParams& params, const FdSteps& steps) {
  const Chart chart(p.n(), p.m());
  const int N = chart.dim();
  const RVec c0 = chart.point_coords(p);
  const MetricTensor g0 = metric_tensor(p, params);
  const RMat ginv = g0.g.inverse();
  const double sqrt_det = std::sqrt(g0.g.determinant());

  // P(c) = sqrt(det g) g^-1, differentiated entrywise
  const auto pfield = [&](const RVec& c) {
    const RMat g = metric_tensor(chart.point_from_coords(c), params).g;
    return RMat(std::sqrt(g.determinant()) * g.inverse());
  };
  RVec drift = RVec::Zero(N);
  for (int i = 0; i < N; ++i) {
    const double h = steps.second * (1.0 + std::abs(c0[i]));
    RVec cp = c0, cm = c0;
    cp[i] += h;
    cm[i] -= h;
    const RMat dP = (pfield(cp) - pfield(cm)) / (2.0 * h);
    drift += dP.row(i).transpose();
  }
  drift /= sqrt_det;

  const ChartDerivs d = chart_derivatives(f, p, chart, steps);
  cplx value = 0.0;
  for (int i = 0; i < N; ++i) {
    value += drift[i] * d.grad[i];
    for (int j = 0; j < N; ++j) value += ginv(i, j) * d.hess(i, j);
  }
  check_real(value, 1e-6, "laplace_beltrami_apply");
  return value.real();
}

namespace {

double curvature_once(const MetricField& gfield, const RVec& c0, double step) {
  const RMat g0 = gfield(c0);
  const int N = static_cast<int>(g0.rows());
  const RMat ginv = g0.inverse();

  std::vector<double> h(N);
  for (int i = 0; i < N; ++i) h[i] = step * (1.0 + std::abs(c0[i]));

  const auto shifted = [&](int i, double hi, int j, double hj) {
    RVec c = c0;
    c[i] += hi;
    if (j >= 0) c[j] += hj;
    return gfield(c);
  };

  std::vector<RMat> gp(N), gm(N), dg(N);
  for (int i = 0; i < N; ++i) {
    gp[i] = shifted(i, h[i], -1, 0);
    gm[i] = shifted(i, -h[i], -1, 0);
    dg[i] = (gp[i] - gm[i]) / (2.0 * h[i]);
  }
  std::vector<std::vector<RMat>> d2g(N, std::vector<RMat>(N));
  for (int i = 0; i < N; ++i) {
    d2g[i][i] = (gp[i] - 2.0 * g0 + gm[i]) / (h[i] * h[i]);
    for (int j = i + 1; j < N; ++j) {
      const RMat mixed = (shifted(i, h[i], j, h[j]) - shifted(i, h[i], j, -h[j]) -
                          shifted(i, -h[i], j, h[j]) + shifted(i, -h[i], j, -h[j])) /
                         (4.0 * h[i] * h[j]);
      d2g[i][j] = mixed;
      d2g[j][i] = mixed;
    }
  }

  // Gamma^k_ij and d_mu Gamma^k_ij
  const auto lower = [&](const std::vector<RMat>& dgf, int i, int j, int l) {
    return dgf[i](j, l) + dgf[j](i, l) - dgf[l](i, j);
  };
  std::vector<RMat> gamma(N, RMat::Zero(N, N));
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i)
      for (int j = i; j < N; ++j) {
        double s = 0;
        for (int l = 0; l < N; ++l) s += ginv(k, l) * lower(dg, i, j, l);
        gamma[k](i, j) = gamma[k](j, i) = 0.5 * s;
      }

  std::vector<RMat> dginv(N);
  for (int mu = 0; mu < N; ++mu) dginv[mu] = -ginv * dg[mu] * ginv;

  // dgamma[mu][k](i,j) = d_mu Gamma^k_ij
  std::vector<std::vector<RMat>> dgamma(N, std::vector<RMat>(N, RMat::Zero(N, N)));
  for (int mu = 0; mu < N; ++mu)
    for (int k = 0; k < N; ++k)
      for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) {
          double s = 0;
          for (int l = 0; l < N; ++l)
            s += dginv[mu](k, l) * lower(dg, i, j, l) +
                 ginv(k, l) * (d2g[mu][i](j, l) + d2g[mu][j](i, l) - d2g[mu][l](i, j));
          dgamma[mu][k](i, j) = dgamma[mu][k](j, i) = 0.5 * s;
        }

  RMat ric = RMat::Zero(N, N);
  for (int s = 0; s < N; ++s)
    for (int v = 0; v < N; ++v) {
      double sum = 0;
      for (int r = 0; r < N; ++r) {
        sum += dgamma[r][r](v, s) - dgamma[v][r](r, s);
        for (int l = 0; l < N; ++l)
          sum += gamma[r](r, l) * gamma[l](v, s) - gamma[r](v, l) * gamma[l](r, s);
      }
      ric(s, v) = sum;
    }

  double scalar = 0;
  for (int s = 0; s < N; ++s)
    for (int v = 0; v < N; ++v) scalar += ginv(s, v) * ric(s, v);
  return scalar;
}

}  // namespace

double scalar_curvature_of_field(const MetricField& g, const RVec& coords, double step,
                                 bool richardson) {
  const double r1 = curvature_once(g, coords, step);
  if (!richardson) return r1;
  const double r2 = curvature_once(g, coords, step / 2.0);
  return (4.0 * r2 - r1) / 3.0;
}

double scalar_curvature(const JacobiPoint& p, const MetricParams& params, const FdSteps& steps) {
  const Chart chart(p.n(), p.m());
  const MetricField field = [&](const RVec& c) {
    return metric_tensor(chart.point_from_coords(c), params).g;
  };
  return scalar_curvature_of_field(field, chart.point_coords(p), steps.second, true);
}

}  // namespace sj
