#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sj/reduction.hpp"
#include "testutil.hpp"

using namespace sj;
using sjtest::max_abs_diff;

namespace {

RMat mat2(double a, double b, double c, double d) {
  RMat m(2, 2);
  m << a, b, c, d;
  return m;
}

double brute_force_minimum(const RMat& y, int box) {
  double best = std::numeric_limits<double>::max();
  const int n = static_cast<int>(y.rows());
  std::vector<int> idx(n, -box);
  while (true) {
    bool nonzero = false;
    for (int v : idx) nonzero = nonzero || v != 0;
    if (nonzero) {
      RVec a(n);
      for (int i = 0; i < n; ++i) a[i] = idx[i];
      best = std::min(best, double(a.transpose() * y * a));
    }
    int d = n - 1;
    while (d >= 0 && idx[d] == box) idx[d--] = -box;
    if (d < 0) break;
    ++idx[d];
  }
  return best;
}

}  // namespace

TEST_CASE("minkowski reduction checks") {
  SUBCASE("identity is reduced at any bound") {
    for (int n : {1, 2, 3})
      CHECK(is_minkowski_reduced(PositiveForm(RMat::Identity(n, n)), 7).reduced);
  }
  SUBCASE("(M.1) violation detected") {
    CHECK_FALSE(is_minkowski_reduced(PositiveForm(mat2(1, 0.6, 0.6, 1)), 5).reduced);
  }
  SUBCASE("valid reduced form accepted") {
    CHECK(is_minkowski_reduced(PositiveForm(mat2(1, 0.3, 0.3, 2)), 5).reduced);
  }
  SUBCASE("(M.2) sign condition") {
    CHECK_FALSE(is_minkowski_reduced(PositiveForm(mat2(1, -0.3, -0.3, 2)), 5).reduced);
  }
  SUBCASE("certificate records the search bound") {
    const MinkowskiCheck check = is_minkowski_reduced(PositiveForm(RMat::Identity(2, 2)), 4);
    CHECK(check.certificate.search_bound == 4);
  }
}

TEST_CASE("minkowski reduce") {
  SUBCASE("n=1 is trivial") {
    RMat y(1, 1);
    y << 2.5;
    const FormReduction fr = minkowski_reduce(PositiveForm(y));
    CHECK(fr.reduced.Y(0, 0) == doctest::Approx(2.5));
    CHECK(std::abs(fr.reducer(0, 0)) == 1);
  }
  SUBCASE("reduces the classic skew form") {
    const FormReduction fr = minkowski_reduce(PositiveForm(mat2(1, 0.6, 0.6, 1)));
    CHECK(is_minkowski_reduced(fr.reduced, 5).reduced);
    CHECK(fr.reduced.Y(0, 0) == doctest::Approx(0.8).epsilon(1e-12));
    // transform recovers the input
    const RMat back =
        fr.transform.cast<double>() * fr.reduced.Y * fr.transform.cast<double>().transpose();
    CHECK(max_abs_diff(back, mat2(1, 0.6, 0.6, 1)) < 1e-12);
  }
  SUBCASE("y11 attains the lattice minimum (brute force oracle)") {
    Rng rng(700);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = rng.uniform_int(2, 3);
      RMat g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.uniform(-1, 1);
      const RMat y = g * g.transpose() + 0.3 * RMat::Identity(n, n);
      const FormReduction fr = minkowski_reduce(PositiveForm(y));
      CHECK(is_minkowski_reduced(fr.reduced, 5).reduced);
      CHECK(fr.reduced.Y(0, 0) ==
            doctest::Approx(brute_force_minimum(y, 10)).epsilon(1e-10));
      CHECK(std::abs(fr.reducer.cast<double>().determinant()) == doctest::Approx(1.0));
    }
  }
  SUBCASE("unsupported dimension") {
    CHECK_THROWS_AS(minkowski_reduce(PositiveForm(RMat::Identity(4, 4))), std::invalid_argument);
  }
}

TEST_CASE("siegel reduction") {
  SUBCASE("iE_n is already reduced") {
    for (int n : {1, 2}) {
      const SiegelPoint z(cplx(0, 1) * CMat::Identity(n, n));
      CHECK(is_siegel_reduced(z).reduced);
    }
  }
  SUBCASE("small |Z| fails (S.1) for n=1") {
    const SiegelPoint z(sjtest::cmat1({0.3, 0.2}));
    CHECK_FALSE(is_siegel_reduced(z).reduced);
  }
  SUBCASE("classical fundamental domain point accepted") {
    const SiegelPoint z(sjtest::cmat1({0.25, 2.0}));
    CHECK(is_siegel_reduced(z).reduced);
  }
  SUBCASE("reduces 0.3 + 0.2i into the classical domain") {
    const SiegelPoint z(sjtest::cmat1({0.3, 0.2}));
    const SiegelReduction sr = siegel_reduce(z);
    const cplx z0 = sr.reduced.Z()(0, 0);
    CHECK(std::abs(z0.real()) <= 0.5 + 1e-9);
    CHECK(std::abs(z0) >= 1.0 - 1e-9);
    CHECK(sr.reduced.imag_part()(0, 0) > z.imag_part()(0, 0));  // det Im raised
    const SiegelPoint back = act_siegel(sr.transform, sr.reduced);
    CHECK(max_abs_diff(back.Z(), z.Z()) < 1e-9);
  }
  SUBCASE("random points, n in {1,2}: postconditions hold") {
    Rng rng(800);
    for (int n : {1, 2}) {
      for (int trial = 0; trial < 25; ++trial) {
        const SiegelPoint z = random_siegel_point(n, rng);
        const SiegelReduction sr = siegel_reduce(z);
        CHECK(sr.reduced.real_part().cwiseAbs().maxCoeff() <= 0.5 + 1e-9);
        CHECK(is_minkowski_reduced(PositiveForm(sr.reduced.imag_part()), 5).reduced);
        CHECK(is_siegel_reduced(sr.reduced, 6, 200, rng.raw()).reduced);
        const SiegelPoint back = act_siegel(sr.transform, sr.reduced);
        CHECK(max_abs_diff(back.Z(), z.Z()) < 1e-9);
        CHECK(sr.reduced.imag_part().determinant() >=
              z.imag_part().determinant() * (1.0 - 1e-9));
      }
    }
  }
  SUBCASE("n=3 smoke test") {
    Rng rng(900);
    const SiegelPoint z = random_siegel_point(3, rng);
    const SiegelReduction sr = siegel_reduce(z);
    CHECK(sr.reduced.real_part().cwiseAbs().maxCoeff() <= 0.5 + 1e-9);
    CHECK(is_minkowski_reduced(PositiveForm(sr.reduced.imag_part()), 5).reduced);
    const SiegelPoint back = act_siegel(sr.transform, sr.reduced);
    CHECK(max_abs_diff(back.Z(), z.Z()) < 1e-8);
  }
  SUBCASE("unsupported dimension is an error") {
    const SiegelPoint z(cplx(0, 1) * CMat::Identity(4, 4));
    CHECK_THROWS_AS(siegel_reduce(z), std::invalid_argument);
  }
}

TEST_CASE("lattice coordinates") {
  SUBCASE("basis vectors give unit coordinate vectors") {
    Rng rng(101);
    const SiegelPoint omega = random_siegel_point(2, rng);
    const LatticeBasis basis(omega, 1);
    CMat f11 = CMat::Zero(1, 2);
    f11(0, 0) = 1.0;
    const RVec c1 = lattice_coords(basis, f11);
    CHECK(c1[0] == doctest::Approx(1.0));
    CHECK(c1.tail(3).cwiseAbs().maxCoeff() < 1e-12);

    const CMat h11 = f11 * omega.Z();
    const RVec c2 = lattice_coords(basis, h11);
    CHECK(c2[2] == doctest::Approx(1.0));
    CHECK(std::abs(c2[0]) < 1e-12);
    CHECK(std::abs(c2[3]) < 1e-12);
  }
  SUBCASE("round trip reconstructs") {
    Rng rng(103);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = rng.uniform_int(1, 3), m = rng.uniform_int(1, 2);
      const SiegelPoint omega = random_siegel_point(n, rng);
      const LatticeBasis basis(omega, m);
      CMat w(m, n);
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < n; ++l) w(k, l) = cplx(rng.uniform(-3, 3), rng.uniform(-3, 3));
      const CMat back = from_lattice_coords(basis, lattice_coords(basis, w));
      CHECK(max_abs_diff(back, w) < 1e-10);
    }
  }
}

TEST_CASE("jacobi reduction") {
  SUBCASE("base point is essentially unchanged") {
    const JacobiPoint p(SiegelPoint(cplx(0, 1) * CMat::Identity(2, 2)), CMat::Zero(1, 2));
    const JacobiReduction jr = jacobi_reduce(p);
    const RVec coords = lattice_coords(LatticeBasis(jr.reduced.z(), 1), jr.reduced.W());
    CHECK(coords.cwiseAbs().maxCoeff() < 1e-9);
    CHECK(max_abs_diff(jr.reduced.Z(), p.Z()) < 1e-9);
  }
  SUBCASE("lattice coordinates land in [0,1) and the round trip holds") {
    Rng rng(105);
    for (const auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}}) {
      for (int trial = 0; trial < 15; ++trial) {
        const JacobiPoint p = random_jacobi_point(n, m, rng);
        const JacobiReduction jr = jacobi_reduce(p);
        const RVec coords = lattice_coords(LatticeBasis(jr.reduced.z(), m), jr.reduced.W());
        for (int i = 0; i < coords.size(); ++i) {
          CHECK(coords[i] >= -1e-9);
          CHECK(coords[i] < 1.0 + 1e-9);
        }
        CHECK(is_minkowski_reduced(PositiveForm(jr.reduced.z().imag_part()), 5).reduced);
        const JacobiPoint back = act_jacobi(jr.transform, jr.reduced);
        CHECK(max_abs_diff(back.Z(), p.Z()) < 1e-9);
        CHECK(max_abs_diff(back.W(), p.W()) < 1e-9);
      }
    }
  }
  SUBCASE("idempotent on interior reduced points") {
    Rng rng(107);
    for (int trial = 0; trial < 10; ++trial) {
      const JacobiPoint p = random_jacobi_point(1, 1, rng);
      const JacobiReduction first = jacobi_reduce(p);
      const RVec c1 = lattice_coords(LatticeBasis(first.reduced.z(), 1), first.reduced.W());
      const bool interior = c1.minCoeff() > 1e-6 && c1.maxCoeff() < 1.0 - 1e-6 &&
                            std::abs(first.reduced.Z()(0, 0)) > 1.0 + 1e-6;
      if (!interior) continue;
      const JacobiReduction second = jacobi_reduce(first.reduced);
      const RVec c2 = lattice_coords(LatticeBasis(second.reduced.z(), 1), second.reduced.W());
      CHECK((c1 - c2).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("siegel volumes") {
  constexpr double pi = 3.141592653589793238462643383279502884;
  SUBCASE("paper values for n = 1..4") {
    CHECK(siegel_volume(1) == doctest::Approx(pi / 3).epsilon(1e-13));
    CHECK(siegel_volume(2) == doctest::Approx(std::pow(pi, 3) / 270).epsilon(1e-13));
    CHECK(siegel_volume(3) == doctest::Approx(std::pow(pi, 6) / 127575).epsilon(1e-13));
    CHECK(siegel_volume(4) == doctest::Approx(std::pow(pi, 10) / 200930625).epsilon(1e-13));
  }
  SUBCASE("matches direct high-precision Gamma/zeta evaluation") {
    // independent evaluation with zeta by series + Euler-Maclaurin tail
    const auto zeta = [](int s) {
      long double sum = 0.0L;
      const int N = 60;
      for (int j = 1; j < N; ++j) sum += std::pow((long double)j, (long double)-s);
      const long double nn = N;
      sum += std::pow(nn, (long double)(1 - s)) / (s - 1) + 0.5L * std::pow(nn, (long double)-s) +
             s / 12.0L * std::pow(nn, (long double)(-s - 1)) -
             (long double)s * (s + 1) * (s + 2) / 720.0L * std::pow(nn, (long double)(-s - 3));
      return sum;
    };
    for (int n = 1; n <= 8; ++n) {
      long double direct = 2.0L;
      long double gamma_k = 1.0L;  // Gamma(1)
      for (int k = 1; k <= n; ++k) {
        direct *= std::pow((long double)pi, (long double)-k) * gamma_k * zeta(2 * k);
        gamma_k *= k;  // Gamma(k+1)
      }
      CHECK(std::abs(siegel_volume(n) - (double)direct) / (double)direct < 1e-12);
    }
  }
  SUBCASE("domain guard") {
    CHECK_THROWS_AS(siegel_volume(0), std::invalid_argument);
    CHECK_THROWS_AS(siegel_volume(21), std::invalid_argument);
  }
}
