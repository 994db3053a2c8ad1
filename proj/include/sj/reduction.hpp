#pragma once

#include <cstdint>
#include <vector>

#include "sj/group.hpp"
#include "sj/types.hpp"

// Reduction theory: Minkowski reduction of positive forms (fundamental domain
// for GL(n,Z) acting by Y -> hY th), Siegel reduction in H_n for Sp(n,Z), and
// Jacobi reduction into the fundamental domain of Sp(n,Z) |x H_Z^(n,m).
//
// Condition (S.1), maximality of det Im over the full modular group, is not
// decidable by finite enumeration; it is checked over randomized generator
// words and the certificate records the sampling parameters. All other
// conditions are checked exactly (up to floating-point slack).

namespace sj {

using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct PositiveForm {
  RMat Y;
  explicit PositiveForm(RMat y) : Y(std::move(y)) {
    if (!is_symmetric(Y)) throw std::invalid_argument("PositiveForm: Y must be symmetric");
    Y = symmetrized(Y);
    if (!is_positive_definite(Y))
      throw std::invalid_argument("PositiveForm: Y must be positive definite");
  }
  int n() const { return static_cast<int>(Y.rows()); }
};

// which conditions were checked and with what search parameters
struct Certificate {
  std::vector<std::string> conditions_checked;
  int search_bound = 0;
  int word_length = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  int iterations = 0;
  std::vector<std::string> conventions;
};

struct MinkowskiCheck {
  bool reduced = false;
  Certificate certificate;
};

// (M.2) exact; (M.1) over integer vectors with entries in [-bound, bound]
// subject to the coprimality condition on (a_k, ..., a_n)
MinkowskiCheck is_minkowski_reduced(const PositiveForm& form, int search_bound = 5);

struct FormReduction {
  PositiveForm reduced;            // reducer Y t(reducer)
  IMat reducer;                    // element of GL(n,Z)
  IMat transform;                  // reducer^-1: transform * reduced * t(transform) = input
  Certificate certificate;
};

// n <= 3; greedy successive-minima construction with exhaustive candidate search
FormReduction minkowski_reduce(const PositiveForm& form);

struct SiegelCheck {
  bool reduced = false;
  Certificate certificate;
};

SiegelCheck is_siegel_reduced(const SiegelPoint& Z, int word_length = 6, int samples = 500,
                              std::uint64_t seed = 0x51E6E1u);

struct SiegelReduction {
  SiegelPoint reduced;
  SymplecticMatrix reducer;    // integral; reduced = reducer . input
  SymplecticMatrix transform;  // reducer^-1; act(transform, reduced) = input
  Certificate certificate;
};

// highest-point iteration: Minkowski reduction of Y, integer translation of X,
// det-Im-raising inversions; det Im never decreases across iterations
SiegelReduction siegel_reduce(const SiegelPoint& Z);

struct JacobiReduction {
  JacobiPoint reduced;
  JacobiGroupElement transform;  // act_jacobi(transform, reduced) = input
  Certificate certificate;
};

// Z-part via siegel_reduce, W-part translated by an integral Heisenberg
// element so its lattice coordinates lie in [0,1)^(2mn)
JacobiReduction jacobi_reduce(const JacobiPoint& p);

// lattice L_Omega = Z^(m,n) + Z^(m,n) Omega with integral basis f_kl, f_kl Omega
struct LatticeBasis {
  SiegelPoint omega;
  int m;
  LatticeBasis(SiegelPoint om, int rows) : omega(std::move(om)), m(rows) {
    if (m < 1) throw std::invalid_argument("LatticeBasis: m must be >= 1");
  }
};

// coefficients (lambda_kl row-major, then mu_kl row-major) with
// Zc = sum lambda_kl f_kl + sum mu_kl f_kl Omega
RVec lattice_coords(const LatticeBasis& basis, const CMat& Zc);
CMat from_lattice_coords(const LatticeBasis& basis, const RVec& coords);

// vol(F_n) = 2 prod_{k=1..n} pi^-k Gamma(k) zeta(2k), with exact even-zeta
// values via Bernoulli numbers in rational arithmetic
double siegel_volume(int n);

// random word in the integral symplectic group (sigma_n, integer translations,
// embedded GL(n,Z)); used by the sampled (S.1) check
SymplecticMatrix random_integral_symplectic(int n, int word_length, Rng& rng);

}  // namespace sj
