#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sj/geometry.hpp"
#include "sj/verify.hpp"
#include "testutil.hpp"

using namespace sj;
using sjtest::cmat1;
using sjtest::max_abs_diff;
using sjtest::point11;

TEST_CASE("chart ordering and round-trips") {
  const Chart chart(2, 1);
  CHECK(chart.dim() == 2 * 3 + 2 * 2);
  CHECK(chart.labels().front() == "x11");
  CHECK(chart.labels()[1] == "x12");
  CHECK(chart.labels()[3] == "y11");
  CHECK(chart.labels()[6] == "u11");
  CHECK(chart.labels().back() == "v12");

  Rng rng(2);
  const JacobiPoint p = random_jacobi_point(2, 1, rng);
  const JacobiPoint back = chart.point_from_coords(chart.point_coords(p));
  CHECK(max_abs_diff(back.Z(), p.Z()) < 1e-15);
  CHECK(max_abs_diff(back.W(), p.W()) < 1e-15);

  const TangentVector v = random_tangent(2, 1, rng);
  const TangentVector tback = chart.tangent_from_coords(chart.tangent_coords(v));
  CHECK(max_abs_diff(tback.dZ, v.dZ) < 1e-15);
  CHECK(max_abs_diff(tback.dW, v.dW) < 1e-15);

  // off-diagonal basis tangent perturbs both symmetric entries
  const TangentVector e_x12 = chart.basis_tangent(1);
  CHECK(e_x12.dZ(0, 1) == cplx(1, 0));
  CHECK(e_x12.dZ(1, 0) == cplx(1, 0));
}

TEST_CASE("metric quadratic form") {
  SUBCASE("at the base point (iE, 0) the form is diagonal") {
    const JacobiPoint base(SiegelPoint(cplx(0, 1) * CMat::Identity(2, 2)), CMat::Zero(1, 2));
    const MetricParams params(1.5, 0.25);
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
      const TangentVector v = random_tangent(2, 1, rng);
      const double q = metric_quadratic_form(base, v, params);
      const double expected = params.A * (v.dZ * v.dZ.conjugate()).trace().real() +
                              params.B * (v.dW.transpose() * v.dW.conjugate()).trace().real();
      CHECK(q == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  SUBCASE("zero tangent gives zero; nonzero tangents positive") {
    Rng rng(6);
    const JacobiPoint p = random_jacobi_point(2, 2, rng);
    CHECK(metric_quadratic_form(p, TangentVector::zero(2, 2), MetricParams(1, 1)) == 0.0);
    for (int trial = 0; trial < 30; ++trial)
      CHECK(metric_quadratic_form(p, random_tangent(2, 2, rng), MetricParams(1, 1)) > 0.0);
  }
  SUBCASE("n=m=1 matches the closed-form coefficient combination") {
    Rng rng(8);
    for (int trial = 0; trial < 25; ++trial) {
      const JacobiPoint p = random_jacobi_point(1, 1, rng);
      const TangentVector v = random_tangent(1, 1, rng);
      const double y = p.Y()(0, 0), vv = p.V()(0, 0);
      const double dx = v.dZ(0, 0).real(), dy = v.dZ(0, 0).imag();
      const double du = v.dW(0, 0).real(), dv = v.dW(0, 0).imag();
      const double expected = (y + vv * vv) / (y * y * y) * (dx * dx + dy * dy) +
                              (du * du + dv * dv) / y -
                              2.0 * vv / (y * y) * (dx * du + dy * dv);
      CHECK(metric_quadratic_form(p, v, MetricParams(1, 1)) ==
            doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("metric tensor") {
  SUBCASE("base point diagonal: A, 2A on x/y pairs and B on u/v") {
    const MetricParams params(1.25, 0.75);
    const JacobiPoint base(SiegelPoint(cplx(0, 1) * CMat::Identity(2, 2)), CMat::Zero(1, 2));
    const MetricTensor g = metric_tensor(base, params);
    RVec expected(10);
    expected << params.A, 2 * params.A, params.A,  // x11 x12 x22
        params.A, 2 * params.A, params.A,          // y11 y12 y22
        params.B, params.B, params.B, params.B;    // u11 u12 v11 v12
    CHECK(max_abs_diff(g.g, RMat(expected.asDiagonal())) < 1e-12);
  }
  SUBCASE("quadratic form consistency tv g v") {
    Rng rng(12);
    for (const auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
      const JacobiPoint p = random_jacobi_point(n, m, rng);
      const MetricParams params(1.0, 2.0);
      const MetricTensor g = metric_tensor(p, params);
      const Chart chart(n, m);
      for (int trial = 0; trial < 10; ++trial) {
        const TangentVector v = random_tangent(n, m, rng);
        const RVec c = chart.tangent_coords(v);
        const double via_tensor = c.transpose() * g.g * c;
        const double direct = metric_quadratic_form(p, v, params);
        CHECK(std::abs(via_tensor - direct) / (1.0 + std::abs(direct)) < 1e-10);
      }
    }
  }
  SUBCASE("berndt coefficients at y=1, v=1") {
    const JacobiPoint p = point11({0.4, 1.0}, {0.3, 1.0});
    const MetricTensor g = metric_tensor(p, MetricParams(1, 1));
    CHECK(g.g(0, 0) == doctest::Approx(2.0).epsilon(1e-12));  // (y+v^2)/y^3
    CHECK(g.g(1, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g.g(2, 2) == doctest::Approx(1.0).epsilon(1e-12));  // 1/y
    CHECK(g.g(0, 2) == doctest::Approx(-1.0).epsilon(1e-12));  // -v/y^2
    CHECK(g.g(1, 3) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(g.g(0, 1) == doctest::Approx(0.0));
  }
}

TEST_CASE("pullback metric invariance") {
  SUBCASE("identity pulls back to the same tensor") {
    Rng rng(14);
    const JacobiPoint p = random_jacobi_point(2, 1, rng);
    const MetricParams params(1, 1);
    const MetricTensor g = metric_tensor(p, params);
    const MetricTensor pb = pullback_metric(JacobiGroupElement::identity(2, 1), p, params);
    CHECK(max_abs_diff(pb.g, g.g) < 1e-12);
  }
  SUBCASE("random words leave the metric invariant") {
    Rng rng(16);
    for (const auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
      for (int trial = 0; trial < 10; ++trial) {
        const JacobiPoint p = random_jacobi_point(n, m, rng);
        const JacobiGroupElement g = random_element(n, m, rng.uniform_int(1, 5), rng);
        const MetricParams params(1.0, 0.5);
        const MetricTensor base = metric_tensor(p, params);
        const MetricTensor pb = pullback_metric(g, p, params);
        CHECK((pb.g - base.g).cwiseAbs().maxCoeff() / (1.0 + base.g.cwiseAbs().maxCoeff()) <
              1e-8);
      }
    }
  }
  SUBCASE("g(h) preserves the metric entrywise") {
    Rng rng(18);
    RMat h(2, 2);
    h << 0.9, 0.2, -0.3, 1.1;
    const JacobiGroupElement g = gen_gl(h, 1);
    const JacobiPoint p = random_jacobi_point(2, 1, rng);
    const MetricTensor base = metric_tensor(p, MetricParams(2, 1));
    const MetricTensor pb = pullback_metric(g, p, MetricParams(2, 1));
    CHECK((pb.g - base.g).cwiseAbs().maxCoeff() / (1.0 + base.g.cwiseAbs().maxCoeff()) < 1e-10);
  }
}

TEST_CASE("volume density") {
  SUBCASE("identity imaginary part gives 1") {
    const JacobiPoint p(SiegelPoint(cplx(0, 1) * CMat::Identity(3, 3)), CMat::Zero(2, 3));
    CHECK(volume_density(p) == doctest::Approx(1.0));
  }
  SUBCASE("n=m=1, y=2 gives 1/8") {
    CHECK(volume_density(point11({0.7, 2.0}, {0, 0})) == doctest::Approx(0.125).epsilon(1e-14));
  }
  SUBCASE("sqrt(det g) is proportional to the invariant density") {
    Rng rng(20);
    const MetricParams params(1.3, 0.6);
    double first_ratio = 0;
    for (int trial = 0; trial < 12; ++trial) {
      const JacobiPoint p = random_jacobi_point(2, 1, rng);
      const double ratio =
          std::sqrt(metric_tensor(p, params).g.determinant()) / volume_density(p);
      if (trial == 0)
        first_ratio = ratio;
      else
        CHECK(std::abs(ratio - first_ratio) / first_ratio < 1e-9);
    }
  }
}

TEST_CASE("wirtinger derivatives") {
  const FdSteps steps;
  SUBCASE("holomorphic trace: df/dz = 1, df/dzbar = 0") {
    const ScalarField f{[](const JacobiPoint& p) { return p.Z()(0, 0); }, false, "z"};
    const JacobiPoint p = point11({0.3, 1.1}, {0.2, -0.4});
    CHECK(std::abs(wirtinger_first(f, p, Wirt::Z, steps)(0, 0) - cplx(1, 0)) < 1e-9);
    CHECK(std::abs(wirtinger_first(f, p, Wirt::Zbar, steps)(0, 0)) < 1e-9);
  }
  SUBCASE("dy/dz = -i/2") {
    const ScalarField f{[](const JacobiPoint& p) { return cplx(p.Y()(0, 0), 0); }, true, "y"};
    const JacobiPoint p = point11({0.3, 1.1}, {0, 0});
    CHECK(std::abs(wirtinger_first(f, p, Wirt::Z, steps)(0, 0) - cplx(0, -0.5)) < 1e-9);
  }
  SUBCASE("second mixed derivative of |z|^2 is 1") {
    const ScalarField f{[](const JacobiPoint& p) { return p.Z()(0, 0) * std::conj(p.Z()(0, 0)); },
                        true, "|z|^2"};
    const WirtingerCalculus wc(f, point11({0.4, 0.9}, {0, 0}), steps);
    CHECK(std::abs(wc.d2_z_zbar(0, 0, 0, 0) - cplx(1, 0)) < 1e-7);
  }
  SUBCASE("W-type derivative of w is 1 with no symmetry weight") {
    const ScalarField f{[](const JacobiPoint& p) { return p.W()(0, 1); }, false, "w12"};
    Rng rng(30);
    const JacobiPoint p = random_jacobi_point(2, 1, rng);
    const CMat dw = wirtinger_first(f, p, Wirt::W, steps);
    CHECK(std::abs(dw(0, 1) - cplx(1, 0)) < 1e-9);
    CHECK(std::abs(dw(0, 0)) < 1e-9);
  }
}

TEST_CASE("laplacian") {
  const FdSteps steps;
  SUBCASE("constants map to zero") {
    const ScalarField f{[](const JacobiPoint&) { return cplx(4.2, 0); }, true, "const"};
    Rng rng(32);
    const JacobiPoint p = random_jacobi_point(2, 1, rng);
    CHECK(std::abs(laplacian_apply(f, p, MetricParams(1, 1), steps)) < 1e-9);
  }
  SUBCASE("y^s is an eigenfunction with eigenvalue s(s-1) at s=2") {
    const ScalarField f{[](const JacobiPoint& p) { return cplx(p.Y()(0, 0) * p.Y()(0, 0), 0); },
                        true, "y^2"};
    Rng rng(34);
    for (int trial = 0; trial < 10; ++trial) {
      const JacobiPoint p = random_jacobi_point(1, 1, rng);
      const double y = p.Y()(0, 0);
      const cplx lap = laplacian_apply(f, p, MetricParams(1, 1), steps);
      CHECK(std::abs(lap - cplx(2 * y * y, 0)) / (1 + 2 * y * y) < 1e-4);
    }
  }
  SUBCASE("n=m=1 display form via independent stencils") {
    // del_{1,1} = y^2 (dxx + dyy) + (y + v^2)(duu + dvv) + 2yv (dxu + dyv)
    const ScalarField f{[](const JacobiPoint& p) {
                          const double x = p.Z()(0, 0).real(), y = p.Z()(0, 0).imag();
                          const double u = p.W()(0, 0).real(), v = p.W()(0, 0).imag();
                          return cplx(x * x * y + u * u * v + x * v, 0);
                        },
                        true, "x^2 y + u^2 v + xv"};
    Rng rng(36);
    for (int trial = 0; trial < 10; ++trial) {
      const JacobiPoint p = random_jacobi_point(1, 1, rng);
      const double y = p.Y()(0, 0), v = p.V()(0, 0);
      // exact second derivatives: fxx = 2y, fuu = 2v, all displayed cross terms vanish
      const double expected = y * y * (2 * y) + (y + v * v) * (2 * v);
      const cplx lap = laplacian_apply(f, p, MetricParams(1, 1), steps);
      CHECK(std::abs(lap.real() - expected) / (1.0 + std::abs(expected)) < 1e-6);
      CHECK(std::abs(lap.imag()) < 1e-8);
    }
  }
  SUBCASE("agrees with the Laplace-Beltrami oracle") {
    Rng rng(38);
    for (const auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}}) {
      const auto fields = smooth_test_fields(n, m);
      const JacobiPoint p = random_jacobi_point(n, m, rng);
      const MetricParams params(1.0, 1.0);
      for (std::size_t i = 0; i < 4; ++i) {
        const double lap = laplacian_apply(fields[i], p, params, steps).real();
        const double lb = laplace_beltrami_apply(fields[i], p, params, steps);
        CHECK(std::abs(lap - lb) / (1.0 + std::abs(lap)) < 1e-3);
      }
    }
  }
  SUBCASE("laplacian commutes with the action") {
    Rng rng(40);
    const auto fields = smooth_test_fields(2, 1);
    const JacobiPoint p = random_jacobi_point(2, 1, rng);
    const JacobiGroupElement g = random_element(2, 1, 3, rng);
    const ScalarField& f = fields[2];
    const ScalarField composed{[&](const JacobiPoint& q) { return f(act_jacobi(g, q)); }, true,
                               "composed"};
    const cplx lhs = laplacian_apply(composed, p, MetricParams(1, 1), steps);
    const cplx rhs = laplacian_apply(f, act_jacobi(g, p), MetricParams(1, 1), steps);
    CHECK(std::abs(lhs - rhs) / (1.0 + std::abs(rhs)) < 1e-3);
  }
}

TEST_CASE("scalar curvature") {
  SUBCASE("known constant-curvature reference fields") {
    // hyperbolic plane (dx^2 + dy^2)/y^2: R = -2
    const MetricField hyperbolic = [](const RVec& c) {
      RMat g(2, 2);
      g.setZero();
      g(0, 0) = g(1, 1) = 1.0 / (c[1] * c[1]);
      return g;
    };
    RVec at(2);
    at << 0.3, 0.8;
    CHECK(scalar_curvature_of_field(hyperbolic, at, 1e-4) == doctest::Approx(-2.0).epsilon(1e-6));

    // unit sphere d\theta^2 + sin^2\theta d\phi^2: R = +2
    const MetricField sphere = [](const RVec& c) {
      RMat g(2, 2);
      g.setZero();
      g(0, 0) = 1.0;
      g(1, 1) = std::sin(c[0]) * std::sin(c[0]);
      return g;
    };
    RVec on(2);
    on << 1.1, 0.4;
    CHECK(scalar_curvature_of_field(sphere, on, 1e-4) == doctest::Approx(2.0).epsilon(1e-6));
  }
  SUBCASE("Siegel-Jacobi value -3 at n=m=1, A=B=1") {
    Rng rng(42);
    for (int trial = 0; trial < 3; ++trial) {
      const JacobiPoint p = random_jacobi_point(1, 1, rng);
      CHECK(scalar_curvature(p, MetricParams(1, 1)) == doctest::Approx(-3.0).epsilon(1e-3));
    }
  }
  SUBCASE("constant across points for other parameters") {
    Rng rng(44);
    const MetricParams params(2.0, 1.0);
    const double r1 = scalar_curvature(random_jacobi_point(1, 1, rng), params);
    const double r2 = scalar_curvature(random_jacobi_point(1, 1, rng), params);
    CHECK(std::abs(r1 - r2) < 2e-3);
  }
}
