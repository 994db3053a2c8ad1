#include "sj/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "sj/reduction.hpp"
#include "sj/spectral.hpp"

namespace sj {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string shape_tag(int n, int m) {
  return "(" + std::to_string(n) + "," + std::to_string(m) + ")";
}

std::string param_tag(const MetricParams& p) {
  return "A=" + std::to_string(p.A) + ",B=" + std::to_string(p.B);
}

struct SuiteBuilder {
  VerificationReport report;
  std::uint64_t seed;

  SuiteBuilder(std::string name, const RunConfig& cfg)
      : seed(cfg.seed ^ fnv1a(name)) {
    report.suite = std::move(name);
  }

  Rng rng() const { return Rng(seed); }

  void add(const std::string& name, const std::string& inputs, double measured,
           const std::string& expected, double tol, bool pass) {
    report.checks.push_back({name, inputs, measured, expected, tol, pass});
  }
  // measured is a deviation checked against tol
  void add_dev(const std::string& name, const std::string& inputs, double dev, double tol) {
    add(name, inputs, dev, "deviation 0", tol, dev <= tol);
  }

  VerificationReport finish() {
    std::sort(report.checks.begin(), report.checks.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const CheckRecord& c) { return c.pass; });
    return std::move(report);
  }
};

double rel_entry_dev(const RMat& a, const RMat& b) {
  return (a - b).cwiseAbs().maxCoeff() / (1.0 + b.cwiseAbs().maxCoeff());
}

// ---------------------------------------------------------------- curvature

VerificationReport suite_curvature(const RunConfig& cfg) {
  SuiteBuilder sb("curvature", cfg);
  Rng rng = sb.rng();
  const MetricParams unit(1.0, 1.0);

  std::vector<double> values;
  for (int i = 0; i < cfg.curvature_points; ++i) {
    const JacobiPoint p = random_jacobi_point(1, 1, rng);
    const double r = scalar_curvature(p, unit, cfg.fd);
    values.push_back(r);
    sb.add("curvature-value-point" + std::to_string(i), "shape=(1,1),A=1,B=1,seed-derived point",
           r, "-3", cfg.tol_curvature, std::abs(r + 3.0) <= cfg.tol_curvature);
  }
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  sb.add_dev("curvature-spread", "shape=(1,1),A=1,B=1", *mx - *mn, cfg.tol_curvature_spread);

  const MetricParams other(2.0, 1.0);
  const double r1 = scalar_curvature(random_jacobi_point(1, 1, rng), other, cfg.fd);
  const double r2 = scalar_curvature(random_jacobi_point(1, 1, rng), other, cfg.fd);
  sb.add_dev("curvature-constancy-A2-B1", "shape=(1,1),A=2,B=1", std::abs(r1 - r2),
             cfg.tol_curvature_spread);
  return sb.finish();
}

// --------------------------------------------------------- metric invariance

VerificationReport suite_metric_invariance(const RunConfig& cfg) {
  SuiteBuilder sb("metric-invariance", cfg);
  Rng rng = sb.rng();

  for (const auto& [n, m] : cfg.shapes) {
    for (const MetricParams params : {MetricParams(1.0, 1.0), MetricParams(2.0, 0.5)}) {
      double worst = 0.0;
      for (int trial = 0; trial < cfg.metric_pairs; ++trial) {
        const JacobiPoint p = random_jacobi_point(n, m, rng);
        const JacobiGroupElement g = random_element(n, m, rng.uniform_int(1, 5), rng);
        const MetricTensor base = metric_tensor(p, params);
        const MetricTensor pb = pullback_metric(g, p, params);
        worst = std::max(worst, rel_entry_dev(pb.g, base.g));
      }
      sb.add_dev("invariance-" + shape_tag(n, m) + "-" + param_tag(params),
                 shape_tag(n, m) + "," + param_tag(params) +
                     ",pairs=" + std::to_string(cfg.metric_pairs),
                 worst, cfg.tol_metric_invariance);
    }

    // positive definiteness at random points (Cholesky inside metric_tensor)
    int failures = 0;
    for (int i = 0; i < cfg.pd_points; ++i) {
      try {
        (void)metric_tensor(random_jacobi_point(n, m, rng), MetricParams(1.0, 1.0));
      } catch (const std::exception&) {
        ++failures;
      }
    }
    sb.add("positive-definite-" + shape_tag(n, m),
           shape_tag(n, m) + ",points=" + std::to_string(cfg.pd_points),
           static_cast<double>(failures), "0 Cholesky failures", 0.0, failures == 0);

    // the A-part alone against the degree-n Siegel metric trace form
    double worst_sp = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const JacobiPoint p = random_jacobi_point(n, m, rng);
      TangentVector v = random_tangent(n, m, rng);
      v = TangentVector(v.dZ, CMat::Zero(m, n));  // W-block zero tangent
      const CMat yinv = p.Y().inverse().cast<cplx>();
      const cplx siegel = (yinv * v.dZ * yinv * v.dZ.conjugate()).trace();
      worst_sp = std::max(worst_sp, std::abs(metric_term_base(p, v) - siegel.real()) /
                                        (1.0 + std::abs(siegel.real())));
    }
    sb.add_dev("siegel-specialization-" + shape_tag(n, m), shape_tag(n, m) + ",tangents=20",
               worst_sp, cfg.tol_siegel_specialization);
  }

  // Berndt coefficients at n = m = 1, A = B = 1: chart order (x, y, u, v)
  double worst_berndt = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const JacobiPoint p = random_jacobi_point(1, 1, rng);
    const double y = p.Y()(0, 0), v = p.V()(0, 0);
    RMat expected(4, 4);
    expected << (y + v * v) / (y * y * y), 0, -v / (y * y), 0,  //
        0, (y + v * v) / (y * y * y), 0, -v / (y * y),          //
        -v / (y * y), 0, 1.0 / y, 0,                            //
        0, -v / (y * y), 0, 1.0 / y;
    const MetricTensor g = metric_tensor(p, MetricParams(1.0, 1.0));
    worst_berndt = std::max(worst_berndt, rel_entry_dev(g.g, expected));
  }
  sb.add_dev("berndt-metric-anchor", "shape=(1,1),A=1,B=1,points=20", worst_berndt,
             cfg.tol_berndt_metric);
  return sb.finish();
}

// ------------------------------------------------------------------ laplacian

// direct stencil evaluation of the n = m = 1 Laplacian display
// y^2 (fxx + fyy) + (y + v^2)(fuu + fvv) + 2yv (fxu + fyv)
double berndt_laplacian(const ScalarField& f, const JacobiPoint& p, double step) {
  const Chart chart(1, 1);
  const RVec c0 = chart.point_coords(p);
  const auto at = [&](double dx, double dy, double du, double dv) {
    RVec d(4);
    d << dx, dy, du, dv;
    return f(chart.displaced(p, d)).real();
  };
  const double f0 = at(0, 0, 0, 0);
  std::array<double, 4> h{};
  for (int i = 0; i < 4; ++i) h[i] = step * (1.0 + std::abs(c0[i]));
  const double fxx = (at(h[0], 0, 0, 0) - 2 * f0 + at(-h[0], 0, 0, 0)) / (h[0] * h[0]);
  const double fyy = (at(0, h[1], 0, 0) - 2 * f0 + at(0, -h[1], 0, 0)) / (h[1] * h[1]);
  const double fuu = (at(0, 0, h[2], 0) - 2 * f0 + at(0, 0, -h[2], 0)) / (h[2] * h[2]);
  const double fvv = (at(0, 0, 0, h[3]) - 2 * f0 + at(0, 0, 0, -h[3])) / (h[3] * h[3]);
  const double fxu = (at(h[0], 0, h[2], 0) - at(h[0], 0, -h[2], 0) - at(-h[0], 0, h[2], 0) +
                      at(-h[0], 0, -h[2], 0)) /
                     (4 * h[0] * h[2]);
  const double fyv = (at(0, h[1], 0, h[3]) - at(0, h[1], 0, -h[3]) - at(0, -h[1], 0, h[3]) +
                      at(0, -h[1], 0, -h[3])) /
                     (4 * h[1] * h[3]);
  const double y = p.Y()(0, 0), v = p.V()(0, 0);
  return y * y * (fxx + fyy) + (y + v * v) * (fuu + fvv) + 2 * y * v * (fxu + fyv);
}

VerificationReport suite_laplacian(const RunConfig& cfg) {
  SuiteBuilder sb("laplacian", cfg);
  Rng rng = sb.rng();

  for (const auto& [n, m] : cfg.shapes) {
    const MetricParams params(1.0, 1.0);
    const auto fields = smooth_test_fields(n, m);

    double worst_oracle = 0.0;
    for (const ScalarField& f : fields) {
      const JacobiPoint p = random_jacobi_point(n, m, rng);
      const double lap = laplacian_apply(f, p, params, cfg.fd).real();
      const double lb = laplace_beltrami_apply(f, p, params, cfg.fd);
      worst_oracle = std::max(worst_oracle, std::abs(lap - lb) / (1.0 + std::abs(lap)));
    }
    sb.add_dev("laplace-beltrami-oracle-" + shape_tag(n, m),
               shape_tag(n, m) + ",fields=" + std::to_string(fields.size()), worst_oracle,
               cfg.tol_laplacian_oracle);

    double worst_inv = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      const ScalarField& f = fields[trial % fields.size()];
      const JacobiPoint p = random_jacobi_point(n, m, rng);
      const JacobiGroupElement g = random_element(n, m, 3, rng);
      const ScalarField composed{[&f, &g](const JacobiPoint& q) { return f(act_jacobi(g, q)); },
                                 f.real_valued, f.label + "∘g"};
      const cplx lhs = laplacian_apply(composed, p, params, cfg.fd);
      const cplx rhs = laplacian_apply(f, act_jacobi(g, p), params, cfg.fd);
      worst_inv = std::max(worst_inv, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
    sb.add_dev("invariance-" + shape_tag(n, m), shape_tag(n, m) + ",words=3", worst_inv,
               cfg.tol_laplacian_invariance);
  }

  // first trace term alone against the Laplace-Beltrami operator of the
  // degree-n Siegel metric, on Z-only fields
  for (int n : {1, 2}) {
    const auto zfields = smooth_test_fields(n, 0);
    double worst = 0.0;
    for (const ScalarField& f : zfields) {
      const SiegelPoint z = random_siegel_point(n, rng);
      const JacobiPoint with_w(z, CMat::Zero(1, n));
      const ScalarField lifted{
          [&f](const JacobiPoint& q) { return f(JacobiPoint(q.z(), CMat::Zero(0, q.n()))); },
          true, f.label};
      const cplx alpha = laplacian_terms(lifted, with_w, cfg.fd).alpha;
      const JacobiPoint z_only(z, CMat::Zero(0, n));
      const double maass = laplace_beltrami_apply(f, z_only, MetricParams(1.0, 1.0), cfg.fd);
      worst = std::max(worst, std::abs(alpha.real() - maass) / (1.0 + std::abs(maass)));
    }
    sb.add_dev("maass-specialization-n" + std::to_string(n),
               "n=" + std::to_string(n) + ",Z-only fields", worst, cfg.tol_maass_specialization);
  }

  // Berndt display anchor on polynomial fields
  {
    const std::vector<ScalarField> polys = {
        {[](const JacobiPoint& p) { return p.Z()(0, 0) * std::conj(p.Z()(0, 0)); }, true, "|z|^2"},
        {[](const JacobiPoint& p) {
           return cplx(p.Z()(0, 0).real() * p.Z()(0, 0).real() * p.Z()(0, 0).imag(), 0);
         },
         true, "x^2 y"},
        {[](const JacobiPoint& p) {
           return cplx(p.W()(0, 0).real() * p.W()(0, 0).real() + p.W()(0, 0).imag(), 0);
         },
         true, "u^2 + v"},
        {[](const JacobiPoint& p) {
           return cplx(p.Z()(0, 0).real() * p.W()(0, 0).imag() * p.W()(0, 0).imag(), 0);
         },
         true, "x v^2"},
        {[](const JacobiPoint& p) {
           return cplx(p.Z()(0, 0).imag() * p.W()(0, 0).real(), 0);
         },
         true, "y u"},
    };
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const JacobiPoint p = random_jacobi_point(1, 1, rng);
      for (const ScalarField& f : polys) {
        const double direct = berndt_laplacian(f, p, cfg.fd.second);
        const double ours = laplacian_apply(f, p, MetricParams(1.0, 1.0), cfg.fd).real();
        worst = std::max(worst, std::abs(direct - ours) / (1.0 + std::abs(direct)));
      }
    }
    sb.add_dev("berndt-laplacian-anchor", "shape=(1,1),polynomials,points=10", worst,
               cfg.tol_berndt_laplacian);
  }
  return sb.finish();
}

// -------------------------------------------------------------------- volumes

VerificationReport suite_volumes(const RunConfig& cfg) {
  SuiteBuilder sb("volumes", cfg);
  Rng rng = sb.rng();

  const double expected[] = {kPi / 3.0, std::pow(kPi, 3) / 270.0, std::pow(kPi, 6) / 127575.0,
                             std::pow(kPi, 10) / 200930625.0};
  for (int n = 1; n <= 4; ++n) {
    const double vol = siegel_volume(n);
    const double rel = std::abs(vol - expected[n - 1]) / expected[n - 1];
    sb.add("siegel-volume-n" + std::to_string(n), "n=" + std::to_string(n), vol,
           "2 prod pi^-k Gamma(k) zeta(2k)", cfg.tol_volume, rel <= cfg.tol_volume);
  }

  for (const auto& [n, m] : cfg.shapes) {
    for (const MetricParams params : {MetricParams(1.0, 1.0), MetricParams(2.0, 0.5)}) {
      std::vector<double> ratios;
      for (int i = 0; i < cfg.volume_points; ++i) {
        const JacobiPoint p = random_jacobi_point(n, m, rng);
        const double sqrt_det = std::sqrt(metric_tensor(p, params).g.determinant());
        ratios.push_back(sqrt_det / volume_density(p));
      }
      double mean = 0;
      for (double r : ratios) mean += r;
      mean /= ratios.size();
      double var = 0;
      for (double r : ratios) var += (r - mean) * (r - mean);
      const double cov = std::sqrt(var / ratios.size()) / mean;
      sb.add_dev("volume-ratio-cov-" + shape_tag(n, m) + "-" + param_tag(params),
                 shape_tag(n, m) + "," + param_tag(params) +
                     ",points=" + std::to_string(cfg.volume_points),
                 cov, cfg.tol_volume_cov);
    }
  }
  return sb.finish();
}

// ------------------------------------------------------------------ reduction

VerificationReport suite_reduction(const RunConfig& cfg) {
  SuiteBuilder sb("reduction", cfg);
  Rng rng = sb.rng();

  for (int n : {1, 2}) {
    int s23_failures = 0, s1_failures = 0;
    double worst_roundtrip = 0.0;
    int domain_failures = 0;
    for (int i = 0; i < cfg.reduction_points; ++i) {
      const SiegelPoint z = random_siegel_point(n, rng);
      const SiegelReduction sr = siegel_reduce(z);

      const RMat x = sr.reduced.real_part();
      bool s3 = x.cwiseAbs().maxCoeff() <= 0.5 + 1e-9;
      const bool s2 = is_minkowski_reduced(PositiveForm(sr.reduced.imag_part()), 5).reduced;
      if (!s3 || !s2) ++s23_failures;

      if (!is_siegel_reduced(sr.reduced, 6, 500, rng.raw()).reduced) ++s1_failures;

      const SiegelPoint back = act_siegel(sr.transform, sr.reduced);
      worst_roundtrip =
          std::max(worst_roundtrip, (back.Z() - z.Z()).cwiseAbs().maxCoeff());

      if (n == 1) {
        const cplx z0 = sr.reduced.Z()(0, 0);
        if (std::abs(z0.real()) > 0.5 + 1e-9 || std::abs(z0) < 1.0 - 1e-9) ++domain_failures;
      }
    }
    const std::string tag = "n=" + std::to_string(n) +
                            ",points=" + std::to_string(cfg.reduction_points);
    sb.add("siegel-reduce-s2-s3-n" + std::to_string(n), tag,
           static_cast<double>(s23_failures), "0 failures", 0.0, s23_failures == 0);
    sb.add("siegel-reduce-s1-sampled-n" + std::to_string(n), tag + ",wl=6,samples=500",
           static_cast<double>(s1_failures), "0 failures", 0.0, s1_failures == 0);
    sb.add_dev("siegel-reduce-roundtrip-n" + std::to_string(n), tag, worst_roundtrip,
               cfg.tol_roundtrip);
    if (n == 1)
      sb.add("siegel-reduce-classical-domain", tag, static_cast<double>(domain_failures),
             "|x| <= 1/2 and |Z| >= 1", 0.0, domain_failures == 0);
  }

  for (const auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
    int box_failures = 0;
    double worst_roundtrip = 0.0;
    const int count = n == 1 ? 100 : 50;
    for (int i = 0; i < count; ++i) {
      const JacobiPoint p = random_jacobi_point(n, m, rng);
      const JacobiReduction jr = jacobi_reduce(p);
      const RVec coords = lattice_coords(LatticeBasis(jr.reduced.z(), m), jr.reduced.W());
      for (int k = 0; k < coords.size(); ++k)
        if (coords[k] < -1e-9 || coords[k] >= 1.0 + 1e-9) ++box_failures;
      const JacobiPoint back = act_jacobi(jr.transform, jr.reduced);
      worst_roundtrip = std::max({worst_roundtrip,
                                  (back.Z() - p.Z()).cwiseAbs().maxCoeff(),
                                  (back.W() - p.W()).cwiseAbs().maxCoeff()});
    }
    sb.add("jacobi-reduce-lattice-box-" + shape_tag(n, m),
           shape_tag(n, m) + ",points=" + std::to_string(count),
           static_cast<double>(box_failures), "coords in [0,1)", 0.0, box_failures == 0);
    sb.add_dev("jacobi-reduce-roundtrip-" + shape_tag(n, m),
               shape_tag(n, m) + ",points=" + std::to_string(count), worst_roundtrip,
               cfg.tol_roundtrip);
  }

  // brute-force minimum anchor for the Minkowski step
  {
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const RMat gmat = [&] {
        RMat g(2, 2);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) g(i, j) = rng.uniform(-1.0, 1.0);
        return RMat(g * g.transpose() + 0.2 * RMat::Identity(2, 2));
      }();
      const FormReduction fr = minkowski_reduce(PositiveForm(gmat));
      double brute = std::numeric_limits<double>::max();
      for (int a = -10; a <= 10; ++a)
        for (int b = -10; b <= 10; ++b) {
          if (a == 0 && b == 0) continue;
          RVec v(2);
          v << a, b;
          brute = std::min(brute, double(v.transpose() * gmat * v));
        }
      worst = std::max(worst, std::abs(fr.reduced.Y(0, 0) - brute) / brute);
    }
    sb.add_dev("minkowski-minimum-n2", "n=2,forms=50,box=10", worst, 1e-12);
  }
  return sb.finish();
}

// ------------------------------------------------------------------- spectral

// plain trapezoid evaluation of the K-Bessel integral, refined until stable
cplx bessel_k_trapezoid(cplx s, cplx z) {
  const double zr = z.real();
  const double sr = std::abs(s.real());
  const double ustar = std::asinh(sr / zr);
  double T = ustar;
  while (-zr * std::cosh(T) + sr * T > -zr * std::cosh(ustar) + sr * ustar - 45.0) T += 0.25;
  cplx prev = 0.0;
  for (int npts = 1 << 10; npts <= (1 << 21); npts *= 2) {
    const double h = 2.0 * T / npts;
    cplx sum = 0.5 * (std::exp(-z * std::cosh(-T) + s * -T) + std::exp(-z * std::cosh(T) + s * T));
    for (int i = 1; i < npts; ++i) {
      const double u = -T + i * h;
      sum += std::exp(-z * std::cosh(u) + s * u);
    }
    const cplx value = 0.5 * h * sum;
    if (std::abs(value - prev) <= 1e-12 * (1.0 + std::abs(value))) return value;
    prev = value;
  }
  return prev;
}

VerificationReport suite_spectral(const RunConfig& cfg) {
  SuiteBuilder sb("spectral", cfg);
  Rng rng = sb.rng();

  // K_{1/2}(z) = sqrt(pi/(2z)) e^-z
  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double z = 0.1 * std::pow(500.0, i / 19.0);  // log-spaced in [0.1, 50]
      const cplx k = bessel_k(0.5, z);
      const cplx closed = std::sqrt(kPi / (2.0 * z)) * std::exp(-z);
      worst = std::max(worst, std::abs(k - closed) / std::abs(closed));
    }
    sb.add_dev("bessel-half-closed-form", "20 z in [0.1,50]", worst, cfg.tol_bessel);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const cplx s(rng.uniform(-3.0, 3.0), rng.uniform(-2.0, 2.0));
      const cplx z(rng.uniform(0.3, 20.0), rng.uniform(-3.0, 3.0));
      const cplx a = bessel_k(s, z), b = bessel_k(-s, z);
      worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
    }
    sb.add_dev("bessel-symmetry-s", "10 random (s,z)", worst, 1e-12);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      const cplx s(rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 1.0));
      const double z = rng.uniform(0.3, 30.0);
      const cplx a = bessel_k(s, z);
      const cplx b = bessel_k_trapezoid(s, z);
      worst = std::max(worst, std::abs(a - b) / std::abs(a));
    }
    sb.add_dev("bessel-quadrature-agreement", "8 random (s,z), GL vs trapezoid", worst,
               cfg.tol_bessel);
  }
  {
    bool monotone = true;
    double last = std::numeric_limits<double>::max();
    for (double z = 0.5; z <= 20.0; z += 0.5) {
      const double k = bessel_k(1.3, z).real();
      if (k >= last) monotone = false;
      last = k;
    }
    sb.add("bessel-monotone-decay", "s=1.3, z in [0.5,20]", monotone ? 0.0 : 1.0,
           "decreasing along real axis", 0.0, monotone);
  }

  // eigenfunction catalog, including the Bessel family
  {
    std::vector<JacobiPoint> points;
    for (int i = 0; i < 20; ++i) points.push_back(random_jacobi_point(1, 1, rng));
    bool all_pass = true;
    double worst = 0.0;
    for (const cplx s : {cplx(1.3, 0.0), cplx(2.0, 0.5)})
      for (const double a : {1.0, -2.0}) {
        for (const auto& cand : eigenfunction_catalog(s, a)) {
          const EigenReport rep =
              check_eigenfunction(cand, points, MetricParams(1.0, 1.0), cfg.tol_eigenfunction,
                                  cfg.fd);
          all_pass = all_pass && rep.pass;
          worst = std::max(worst, rep.max_residual);
        }
      }
    sb.add("eigenfunction-catalog", "s in {1.3, 2+0.5i}, a in {1,-2}, 20 points", worst,
           "max residual <= tol", cfg.tol_eigenfunction, all_pass);

    // negative control: y^2 with the wrong eigenvalue must fail
    EigenCandidate wrong{{[](const JacobiPoint& p) {
                            return cplx(p.Y()(0, 0) * p.Y()(0, 0), 0.0);
                          },
                          true, "y^2"},
                         cplx(3.0, 0.0), "y^2 (wrong eigenvalue)"};
    const EigenReport rep =
        check_eigenfunction(wrong, points, MetricParams(1.0, 1.0), cfg.tol_eigenfunction, cfg.fd);
    sb.add("eigenfunction-negative-control", "y^2 with lambda=3", rep.max_residual,
           "residual above tol", cfg.tol_eigenfunction, !rep.pass);
  }

  // torus basis: periodicity, Gram identity, eigenfunction property
  for (int trial = 0; trial < 3; ++trial) {
    const SiegelPoint omega = random_siegel_point(1, rng);
    const std::string tag = "omega#" + std::to_string(trial) + " (m=n=1)";

    double worst_per = 0.0;
    for (int i = 0; i < 50; ++i) {
      Eigen::MatrixXi a(1, 1), b(1, 1);
      a << rng.uniform_int(-2, 2);
      b << rng.uniform_int(-2, 2);
      const TorusField e = torus_basis_fn(omega, {a, b});
      CMat zc(1, 1);
      zc(0, 0) = cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
      const double lam = rng.uniform_int(-2, 2), mu = rng.uniform_int(-2, 2);
      const CMat shifted = zc + lam * omega.Z() + mu * CMat::Identity(1, 1);
      worst_per = std::max(worst_per, std::abs(e(shifted) - e(zc)));
    }
    sb.add_dev("torus-periodicity-" + std::to_string(trial), tag + ",50 shifts", worst_per,
               cfg.tol_periodicity);

    std::vector<TorusField> basis;
    std::vector<std::pair<int, int>> indices;
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b) {
        Eigen::MatrixXi am(1, 1), bm(1, 1);
        am << a;
        bm << b;
        basis.push_back(torus_basis_fn(omega, {am, bm}));
        indices.emplace_back(a, b);
      }
    double worst_gram = 0.0;
    const QuadratureGrid grid(32);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i; j < basis.size(); ++j) {
        const cplx ip = torus_inner_product(omega, 1, basis[i], basis[j], grid);
        const double target = i == j ? 1.0 : 0.0;
        worst_gram = std::max(worst_gram, std::abs(ip - target));
      }
    sb.add_dev("torus-gram-identity-" + std::to_string(trial), tag + ",25 fns,grid=32",
               worst_gram, cfg.tol_gram);

    double worst_ratio = 0.0;
    bool zero_iff = true;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      cplx mean = 0.0;
      std::vector<cplx> ratios;
      for (int t = 0; t < 50; ++t) {
        CMat zc(1, 1);
        zc(0, 0) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        const cplx ratio = torus_laplacian_apply(omega, basis[i], zc, cfg.fd) / basis[i](zc);
        ratios.push_back(ratio);
        mean += ratio;
      }
      mean /= static_cast<double>(ratios.size());
      for (const cplx r : ratios)
        worst_ratio = std::max(worst_ratio, std::abs(r - mean) / (1.0 + std::abs(mean)));
      const bool is_zero_index = indices[i].first == 0 && indices[i].second == 0;
      if (is_zero_index && std::abs(mean) > 1e-8) zero_iff = false;
      if (!is_zero_index && std::abs(mean) < 1e-3) zero_iff = false;
    }
    sb.add_dev("torus-eigen-ratio-constancy-" + std::to_string(trial), tag + ",50 pts/fn",
               worst_ratio, cfg.tol_torus_eigen);
    sb.add("torus-eigen-zero-iff-trivial-" + std::to_string(trial), tag,
           zero_iff ? 0.0 : 1.0, "lambda = 0 iff (A,B)=(0,0)", 0.0, zero_iff);
  }

  // reduced Gram spot-check at m=1, n=2
  {
    const SiegelPoint omega = random_siegel_point(2, rng);
    const QuadratureGrid grid(12);
    double worst = 0.0;
    for (int pair = 0; pair < 40; ++pair) {
      Eigen::MatrixXi a1(1, 2), b1(1, 2), a2(1, 2), b2(1, 2);
      for (int l = 0; l < 2; ++l) {
        a1(0, l) = rng.uniform_int(-2, 2);
        b1(0, l) = rng.uniform_int(-2, 2);
      }
      const bool diagonal = pair < 10;
      if (diagonal) {
        a2 = a1;
        b2 = b1;
      } else {
        for (int l = 0; l < 2; ++l) {
          a2(0, l) = rng.uniform_int(-2, 2);
          b2(0, l) = rng.uniform_int(-2, 2);
        }
      }
      const TorusField f = torus_basis_fn(omega, {a1, b1});
      const TorusField g = torus_basis_fn(omega, {a2, b2});
      const cplx ip = torus_inner_product(omega, 1, f, g, grid);
      const double target = (a1 == a2 && b1 == b2) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(ip - target));
    }
    sb.add_dev("torus-gram-spot-m1-n2", "40 pairs,grid=12", worst, cfg.tol_gram_12);
  }

  // Riemann conditions
  for (int n : {1, 2, 3}) {
    bool all_ok = true;
    for (int i = 0; i < 50; ++i)
      all_ok = all_ok && riemann_conditions(random_siegel_point(n, rng).Z()).ok;
    sb.add("riemann-conditions-n" + std::to_string(n), "n=" + std::to_string(n) + ",50 points",
           all_ok ? 0.0 : 1.0, "RC.1 = 0 and RC.2 > 0", 0.0, all_ok);
  }
  {
    CMat bad(2, 2);
    bad << cplx(0, 1), cplx(0.5, 0), cplx(-0.5, 0), cplx(0, 1);  // deliberately non-symmetric
    const RiemannCheck rc = riemann_conditions(bad);
    sb.add("riemann-negative-control", "non-symmetric Omega", rc.rc1_residual,
           "RC.1 residual nonzero", 0.0, !rc.ok && rc.rc1_residual > 1e-3);
  }
  return sb.finish();
}

}  // namespace

std::vector<ScalarField> smooth_test_fields(int n, int m) {
  std::vector<ScalarField> fields;
  const auto add = [&](std::function<cplx(const JacobiPoint&)> fn, const std::string& label) {
    fields.push_back({std::move(fn), true, label});
  };
  add([](const JacobiPoint& p) { return cplx(p.X().trace(), 0); }, "tr X");
  add([](const JacobiPoint& p) { return cplx((p.X() * p.X().transpose()).trace(), 0); },
      "tr X tX");
  add([](const JacobiPoint& p) { return cplx(std::pow(p.Y().determinant(), 1.3), 0); },
      "det(Y)^1.3");
  add([](const JacobiPoint& p) {
        const double t = p.Y().trace();
        return cplx(t * t, 0);
      },
      "tr(Y)^2");
  add([](const JacobiPoint& p) { return cplx((p.X() * p.Y() * p.X()).trace(), 0); }, "tr XYX");
  if (m > 0) {
    add([](const JacobiPoint& p) {
          return cplx((p.U() * p.U().transpose()).trace() + (p.V() * p.V().transpose()).trace(),
                      0);
        },
        "tr UtU + tr VtV");
    add([](const JacobiPoint& p) {
          return cplx((p.V() * p.V().transpose()).trace() * std::sqrt(p.Y().determinant()), 0);
        },
        "tr VtV det(Y)^0.5");
    add([](const JacobiPoint& p) { return cplx(p.X().trace() * p.V().sum(), 0); },
        "tr X * sum V");
    add([](const JacobiPoint& p) {
          return cplx(p.U().sum() * std::pow(p.Y().determinant(), 0.7), 0);
        },
        "sum U det(Y)^0.7");
    add([](const JacobiPoint& p) { return cplx((p.U() * p.V().transpose()).trace(), 0); },
        "tr UtV");
    add([](const JacobiPoint& p) {
          return cplx(std::exp(-0.25 * (p.U() * p.U().transpose()).trace()), 0);
        },
        "exp(-tr UtU/4)");
  }
  return fields;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "metric-invariance", "laplacian", "curvature", "volumes", "reduction", "spectral", "all"};
  return names;
}

VerificationReport run_suite(const std::string& name, const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  if (name == "curvature") {
    report = suite_curvature(cfg);
  } else if (name == "metric-invariance") {
    report = suite_metric_invariance(cfg);
  } else if (name == "laplacian") {
    report = suite_laplacian(cfg);
  } else if (name == "volumes") {
    report = suite_volumes(cfg);
  } else if (name == "reduction") {
    report = suite_reduction(cfg);
  } else if (name == "spectral") {
    report = suite_spectral(cfg);
  } else if (name == "all") {
    report.suite = "all";
    report.pass = true;
    for (const std::string& sub :
         {"metric-invariance", "laplacian", "curvature", "volumes", "reduction", "spectral"}) {
      VerificationReport part = run_suite(sub, cfg);
      report.pass = report.pass && part.pass;
      for (CheckRecord& c : part.checks) {
        c.name = sub + "/" + c.name;
        report.checks.push_back(std::move(c));
      }
    }
    std::sort(report.checks.begin(), report.checks.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  } else {
    throw std::invalid_argument("unknown suite: " + name);
  }
  report.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

json report_to_json(const VerificationReport& report, bool include_duration) {
  json checks = json::array();
  for (const CheckRecord& c : report.checks)
    checks.push_back(json{{"name", c.name},
                          {"inputs", c.inputs},
                          {"measured", c.measured},
                          {"expected", c.expected},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
  json out{{"suite", report.suite}, {"checks", std::move(checks)}, {"pass", report.pass}};
  if (include_duration) out["duration_seconds"] = report.duration_seconds;
  return out;
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("shapes")) {
    cfg.shapes.clear();
    for (const auto& s : j.at("shapes")) {
      if (!s.is_array() || s.size() != 2) throw JsonError("config: shape must be [n, m]");
      cfg.shapes.emplace_back(s[0].get<int>(), s[1].get<int>());
    }
  }
  if (j.contains("fd_steps")) {
    const auto& f = j.at("fd_steps");
    if (f.contains("first")) cfg.fd.first = f.at("first").get<double>();
    if (f.contains("second")) cfg.fd.second = f.at("second").get<double>();
    if (!(cfg.fd.first > 0) || !(cfg.fd.second > 0))
      throw JsonError("config: fd steps must be positive");
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    const auto get = [&](const char* key, double& slot) {
      if (t.contains(key)) {
        slot = t.at(key).get<double>();
        if (!(slot > 0)) throw JsonError(std::string("config: tolerance ") + key + " must be > 0");
      }
    };
    get("curvature", cfg.tol_curvature);
    get("curvature_spread", cfg.tol_curvature_spread);
    get("metric_invariance", cfg.tol_metric_invariance);
    get("laplacian_oracle", cfg.tol_laplacian_oracle);
    get("laplacian_invariance", cfg.tol_laplacian_invariance);
    get("eigenfunction", cfg.tol_eigenfunction);
    get("volume", cfg.tol_volume);
    get("volume_cov", cfg.tol_volume_cov);
    get("roundtrip", cfg.tol_roundtrip);
    get("periodicity", cfg.tol_periodicity);
    get("gram", cfg.tol_gram);
    get("torus_eigen", cfg.tol_torus_eigen);
    get("bessel", cfg.tol_bessel);
  }
  if (j.contains("counts")) {
    const auto& c = j.at("counts");
    if (c.contains("metric_pairs")) cfg.metric_pairs = c.at("metric_pairs").get<int>();
    if (c.contains("reduction_points")) cfg.reduction_points = c.at("reduction_points").get<int>();
    if (c.contains("volume_points")) cfg.volume_points = c.at("volume_points").get<int>();
    if (c.contains("pd_points")) cfg.pd_points = c.at("pd_points").get<int>();
  }
  return cfg;
}

}  // namespace sj
