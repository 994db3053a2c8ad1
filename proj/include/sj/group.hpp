#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sj/types.hpp"

// The Jacobi group G^J = Sp(n,R) |x H_R^(n,m) and its action on the
// Siegel-Jacobi space.
//
//   symplectic action    M . Z = (AZ + B)(CZ + D)^-1
//   Jacobi action        (M,(l,u;k)) . (Z,W) = (M.Z, (W + lZ + u)(CZ + D)^-1)
//   multiplication       (M,h)(M',h') = (MM', (lt+l', ut+u'; k+k'+lt t(u') - ut t(l')))
//                        with (lt, ut) = (l, u) M'
//
// The exact differential of the action (the tangent map) is
//   dZ* = t(CZ+D)^-1 dZ (CZ+D)^-1
//   dW* = dW (CZ+D)^-1 + (l - (W+lZ+u)(CZ+D)^-1 C) dZ (CZ+D)^-1

namespace sj {

class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(RMat mat);

  int n() const { return static_cast<int>(m_.rows()) / 2; }
  const RMat& mat() const { return m_; }
  RMat A() const { return m_.topLeftCorner(n(), n()); }
  RMat B() const { return m_.topRightCorner(n(), n()); }
  RMat C() const { return m_.bottomLeftCorner(n(), n()); }
  RMat D() const { return m_.bottomRightCorner(n(), n()); }

  static SymplecticMatrix identity(int n);
  static RMat standard_J(int n);  // [[0, E], [-E, 0]]

  // block identity M^-1 = [[tD, -tB], [-tC, tA]]; exact for exact symplectic input
  SymplecticMatrix inverse() const;

 private:
  RMat m_;
};

class HeisenbergElement {
 public:
  HeisenbergElement(RMat lambda, RMat mu, RMat kappa);

  int n() const { return static_cast<int>(lambda_.cols()); }
  int m() const { return static_cast<int>(lambda_.rows()); }
  const RMat& lambda() const { return lambda_; }
  const RMat& mu() const { return mu_; }
  const RMat& kappa() const { return kappa_; }

  static HeisenbergElement identity(int n, int m);

 private:
  RMat lambda_, mu_, kappa_;
};

struct JacobiGroupElement {
  SymplecticMatrix M;
  HeisenbergElement h;

  JacobiGroupElement(SymplecticMatrix mat, HeisenbergElement heis);

  int n() const { return M.n(); }
  int m() const { return h.m(); }
  static JacobiGroupElement identity(int n, int m);
};

HeisenbergElement heisenberg_mul(const HeisenbergElement& h1, const HeisenbergElement& h2);
JacobiGroupElement jacobi_mul(const JacobiGroupElement& g1, const JacobiGroupElement& g2);
JacobiGroupElement jacobi_inverse(const JacobiGroupElement& g);

SiegelPoint act_siegel(const SymplecticMatrix& M, const SiegelPoint& Z);
JacobiPoint act_jacobi(const JacobiGroupElement& g, const JacobiPoint& p);
TangentVector tangent_map(const JacobiGroupElement& g, const JacobiPoint& p,
                          const TangentVector& v);

// generator families of G^J
JacobiGroupElement gen_translation(const RMat& b, const HeisenbergElement& h);  // t(b; l,u,k)
JacobiGroupElement gen_gl(const RMat& h, int m);                                // g(h), h in GL(n,R)
JacobiGroupElement gen_sigma(int n, int m);                                     // sigma_n

std::vector<JacobiGroupElement> generators(int n, int m, const RMat& b,
                                           const HeisenbergElement& heis, const RMat& h);

// Deterministic RNG: mt19937_64 engine with a hand-rolled uniform so that
// sampled values are identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// word of word_length generators with bounded parameters; deterministic given rng state
JacobiGroupElement random_element(int n, int m, int word_length, Rng& rng);
inline JacobiGroupElement random_element(int n, int m, int word_length, std::uint64_t seed) {
  Rng rng(seed);
  return random_element(n, m, word_length, rng);
}

// random valid points with moderate conditioning, for tests and verification suites
SiegelPoint random_siegel_point(int n, Rng& rng);
JacobiPoint random_jacobi_point(int n, int m, Rng& rng);
TangentVector random_tangent(int n, int m, Rng& rng);

}  // namespace sj
