#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sj/geometry.hpp"
#include "sj/types.hpp"

// Spectral side: the eigenfunction catalog for the n = m = 1 Laplacian, the
// K-Bessel integral, and the spectral theory on the complex torus
// A_Omega = C^(m,n) / (Z^(m,n) + Z^(m,n) Omega): the basis exponentials
// E_{Omega;A,B}, the torus Laplacian, the normalized inner product, and the
// Riemann period conditions.

namespace sj {

// K_s(z) = 1/2 int_0^inf exp(-z/2 (t + 1/t)) t^(s-1) dt, Re z > 0.
// Evaluated after t = e^u (which makes the s <-> -s symmetry manifest) with
// composite Gauss-Legendre panels graded by the local oscillation rate.
cplx bessel_k(cplx s, cplx z);

struct EigenCandidate {
  ScalarField field;
  cplx eigenvalue;
  std::string label;
};

// the catalog: Bessel-Fourier family plus the polynomial families in
// x, y, u, v; all for n = m = 1
std::vector<EigenCandidate> eigenfunction_catalog(cplx s, double a);

struct EigenReport {
  std::string candidate;
  int points = 0;
  double max_residual = 0.0;
  bool pass = false;
};

// |Delta f - lambda f| / (1 + |lambda f|) at each point, via laplacian_apply
EigenReport check_eigenfunction(const EigenCandidate& c, const std::vector<JacobiPoint>& points,
                                const MetricParams& params, double tol,
                                const FdSteps& steps = {});

struct TorusBasisIndex {
  Eigen::MatrixXi A;  // m x n integer
  Eigen::MatrixXi B;
};

using TorusField = std::function<cplx(const CMat&)>;

// E_{Omega;A,B}(Z) = exp(2 pi i (s(tA U) + s((B - A X) Y^-1 tV))), |E| = 1
TorusField torus_basis_fn(const SiegelPoint& omega, const TorusBasisIndex& idx);

// Delta_Omega = s((Im Omega) d/dZ t(d/dZb)) via Wirtinger finite differences
cplx torus_laplacian_apply(const SiegelPoint& omega, const TorusField& f, const CMat& Zc,
                           const FdSteps& steps = {});

struct QuadratureGrid {
  int points_per_direction = 32;
  explicit QuadratureGrid(int p = 32) : points_per_direction(p) {
    if (p < 2) throw std::invalid_argument("QuadratureGrid: need >= 2 points per direction");
  }
};

// (f,g) = int_{A_Omega} f conj(g) dv_Omega with dv normalized to total mass 1;
// rectangle rule in lattice coordinates (spectrally accurate on periodic
// integrands), compensated summation in fixed order
cplx torus_inner_product(const SiegelPoint& omega, int m, const TorusField& f,
                         const TorusField& g, const QuadratureGrid& grid = QuadratureGrid());

struct RiemannCheck {
  bool ok = false;
  double rc1_residual = 0.0;  // max |Omega* J tOmega*|
  double rc2_min_eigenvalue = 0.0;
};

// period matrix Omega* = (E_n, Omega); (RC.1) Omega* J tOmega* = 0 and
// (RC.2) -1/i Omega* J tOmegabar* > 0; non-symmetric input tolerated so the
// negative direction is testable
RiemannCheck riemann_conditions(const CMat& omega);

}  // namespace sj
