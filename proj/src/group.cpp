#include "sj/group.hpp"

#include <cmath>

namespace sj {

namespace {

// conditioning guard for CZ + D (spec of the action requires invertibility)
constexpr double kCondLimit = 1e12;

CMat solve_right(const CMat& numer, const CMat& denom) {
  // numer * denom^-1, solved as t(denom) tR = t(numer), with a conditioning check
  Eigen::PartialPivLU<CMat> lu(denom.transpose());
  const double rc = lu.rcond();
  if (!(rc > 1.0 / kCondLimit))
    throw std::runtime_error("act: CZ + D is numerically singular (rcond " + std::to_string(rc) + ")");
  return lu.solve(numer.transpose()).transpose();
}

}  // namespace

SymplecticMatrix::SymplecticMatrix(RMat mat) : m_(std::move(mat)) {
  if (m_.rows() != m_.cols() || m_.rows() % 2 != 0)
    throw std::invalid_argument("SymplecticMatrix: expected square 2n x 2n matrix");
  const RMat j = standard_J(n());
  const double scale = 1.0 + m_.squaredNorm();
  if ((m_.transpose() * j * m_ - j).cwiseAbs().maxCoeff() > kSymTol * scale)
    throw std::invalid_argument("SymplecticMatrix: tM J M = J violated");
}

RMat SymplecticMatrix::standard_J(int n) {
  RMat j = RMat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = RMat::Identity(n, n);
  j.bottomLeftCorner(n, n) = -RMat::Identity(n, n);
  return j;
}

SymplecticMatrix SymplecticMatrix::identity(int n) {
  return SymplecticMatrix(RMat::Identity(2 * n, 2 * n));
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const int k = n();
  RMat inv(2 * k, 2 * k);
  inv.topLeftCorner(k, k) = D().transpose();
  inv.topRightCorner(k, k) = -B().transpose();
  inv.bottomLeftCorner(k, k) = -C().transpose();
  inv.bottomRightCorner(k, k) = A().transpose();
  return SymplecticMatrix(inv);
}

HeisenbergElement::HeisenbergElement(RMat lambda, RMat mu, RMat kappa)
    : lambda_(std::move(lambda)), mu_(std::move(mu)), kappa_(std::move(kappa)) {
  const int m = static_cast<int>(lambda_.rows());
  const int n = static_cast<int>(lambda_.cols());
  if (mu_.rows() != m || mu_.cols() != n)
    throw std::invalid_argument("HeisenbergElement: lambda/mu dimension mismatch");
  if (kappa_.rows() != m || kappa_.cols() != m)
    throw std::invalid_argument("HeisenbergElement: kappa must be m x m");
  const RMat s = kappa_ + mu_ * lambda_.transpose();
  const double scale = 1.0 + s.cwiseAbs().maxCoeff();
  if (m > 0 && (s - s.transpose()).cwiseAbs().maxCoeff() > kSymTol * scale)
    throw std::invalid_argument("HeisenbergElement: kappa + mu tlambda must be symmetric");
}

HeisenbergElement HeisenbergElement::identity(int n, int m) {
  return HeisenbergElement(RMat::Zero(m, n), RMat::Zero(m, n), RMat::Zero(m, m));
}

JacobiGroupElement::JacobiGroupElement(SymplecticMatrix mat, HeisenbergElement heis)
    : M(std::move(mat)), h(std::move(heis)) {
  if (M.n() != h.n()) throw std::invalid_argument("JacobiGroupElement: n mismatch");
}

JacobiGroupElement JacobiGroupElement::identity(int n, int m) {
  return JacobiGroupElement(SymplecticMatrix::identity(n), HeisenbergElement::identity(n, m));
}

HeisenbergElement heisenberg_mul(const HeisenbergElement& h1, const HeisenbergElement& h2) {
  if (h1.n() != h2.n() || h1.m() != h2.m())
    throw std::invalid_argument("heisenberg_mul: dimension mismatch");
  return HeisenbergElement(h1.lambda() + h2.lambda(), h1.mu() + h2.mu(),
                           h1.kappa() + h2.kappa() + h1.lambda() * h2.mu().transpose() -
                               h1.mu() * h2.lambda().transpose());
}

JacobiGroupElement jacobi_mul(const JacobiGroupElement& g1, const JacobiGroupElement& g2) {
  if (g1.n() != g2.n() || g1.m() != g2.m())
    throw std::invalid_argument("jacobi_mul: dimension mismatch");
  const RMat& m2 = g2.M.mat();
  const int n = g1.n();
  // (lt, ut) = (lambda, mu) M'
  const RMat lt = g1.h.lambda() * m2.topLeftCorner(n, n) + g1.h.mu() * m2.bottomLeftCorner(n, n);
  const RMat ut = g1.h.lambda() * m2.topRightCorner(n, n) + g1.h.mu() * m2.bottomRightCorner(n, n);
  const RMat kappa = g1.h.kappa() + g2.h.kappa() + lt * g2.h.mu().transpose() -
                     ut * g2.h.lambda().transpose();
  return JacobiGroupElement(SymplecticMatrix(g1.M.mat() * m2),
                            HeisenbergElement(lt + g2.h.lambda(), ut + g2.h.mu(), kappa));
}

JacobiGroupElement jacobi_inverse(const JacobiGroupElement& g) {
  const SymplecticMatrix minv = g.M.inverse();
  const int n = g.n();
  const RMat& mi = minv.mat();
  const RMat lt = g.h.lambda() * mi.topLeftCorner(n, n) + g.h.mu() * mi.bottomLeftCorner(n, n);
  const RMat ut = g.h.lambda() * mi.topRightCorner(n, n) + g.h.mu() * mi.bottomRightCorner(n, n);
  const RMat kappa =
      -g.h.kappa() + lt * ut.transpose() - ut * lt.transpose();
  return JacobiGroupElement(minv, HeisenbergElement(-lt, -ut, kappa));
}

SiegelPoint act_siegel(const SymplecticMatrix& M, const SiegelPoint& Z) {
  const int n = Z.n();
  const CMat cz_d = M.C().cast<cplx>() * Z.Z() + M.D().cast<cplx>();
  const CMat num = M.A().cast<cplx>() * Z.Z() + M.B().cast<cplx>();
  CMat result = solve_right(num, cz_d);
  (void)n;
  return SiegelPoint(symmetrized(result));
}

JacobiPoint act_jacobi(const JacobiGroupElement& g, const JacobiPoint& p) {
  if (g.n() != p.n() || g.m() != p.m())
    throw std::invalid_argument("act_jacobi: dimension mismatch");
  const SiegelPoint z_star = act_siegel(g.M, p.z());
  const CMat cz_d = g.M.C().cast<cplx>() * p.Z() + g.M.D().cast<cplx>();
  const CMat num = p.W() + g.h.lambda().cast<cplx>() * p.Z() + g.h.mu().cast<cplx>();
  return JacobiPoint(z_star, solve_right(num, cz_d));
}

TangentVector tangent_map(const JacobiGroupElement& g, const JacobiPoint& p,
                          const TangentVector& v) {
  if (g.n() != p.n() || g.m() != p.m() || v.n() != p.n() || v.m() != p.m())
    throw std::invalid_argument("tangent_map: dimension mismatch");
  const CMat cz_d = g.M.C().cast<cplx>() * p.Z() + g.M.D().cast<cplx>();
  Eigen::PartialPivLU<CMat> lu(cz_d);
  if (!(lu.rcond() > 1e-12)) throw std::runtime_error("tangent_map: CZ + D numerically singular");
  const CMat inv = lu.inverse();
  const CMat dz_star = inv.transpose() * v.dZ * inv;
  const CMat w_star = (p.W() + g.h.lambda().cast<cplx>() * p.Z() + g.h.mu().cast<cplx>()) * inv;
  const CMat dw_star =
      v.dW * inv + (g.h.lambda().cast<cplx>() - w_star * g.M.C().cast<cplx>()) * v.dZ * inv;
  return TangentVector(symmetrized(dz_star), dw_star);
}

JacobiGroupElement gen_translation(const RMat& b, const HeisenbergElement& h) {
  const int n = h.n();
  if (b.rows() != n || b.cols() != n || !is_symmetric(b))
    throw std::invalid_argument("gen_translation: b must be symmetric n x n");
  RMat m = RMat::Identity(2 * n, 2 * n);
  m.topRightCorner(n, n) = symmetrized(b);
  return JacobiGroupElement(SymplecticMatrix(m), h);
}

JacobiGroupElement gen_gl(const RMat& h, int m) {
  const int n = static_cast<int>(h.rows());
  if (h.cols() != n) throw std::invalid_argument("gen_gl: h must be square");
  Eigen::PartialPivLU<RMat> lu(h);
  if (!(lu.rcond() > 1e-12)) throw std::invalid_argument("gen_gl: h must be invertible");
  RMat mat = RMat::Zero(2 * n, 2 * n);
  mat.topLeftCorner(n, n) = h.transpose();
  mat.bottomRightCorner(n, n) = lu.inverse();
  return JacobiGroupElement(SymplecticMatrix(mat), HeisenbergElement::identity(n, m));
}

JacobiGroupElement gen_sigma(int n, int m) {
  RMat mat = RMat::Zero(2 * n, 2 * n);
  mat.topRightCorner(n, n) = -RMat::Identity(n, n);
  mat.bottomLeftCorner(n, n) = RMat::Identity(n, n);
  return JacobiGroupElement(SymplecticMatrix(mat), HeisenbergElement::identity(n, m));
}

std::vector<JacobiGroupElement> generators(int n, int m, const RMat& b,
                                           const HeisenbergElement& heis, const RMat& h) {
  return {gen_translation(b, heis), gen_gl(h, m), gen_sigma(n, m)};
}

namespace {

RMat random_matrix(int rows, int cols, Rng& rng, double lo, double hi) {
  RMat out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = rng.uniform(lo, hi);
  return out;
}

HeisenbergElement random_heisenberg(int n, int m, Rng& rng) {
  const RMat lambda = random_matrix(m, n, rng, -1.0, 1.0);
  const RMat mu = random_matrix(m, n, rng, -1.0, 1.0);
  // kappa's skew part is pinned by the kappa + mu tlambda symmetry; symmetric part free
  const RMat k = random_matrix(m, m, rng, -1.0, 1.0);
  const RMat kappa = symmetrized(k) +
                     0.5 * (lambda * mu.transpose() - mu * lambda.transpose());
  return HeisenbergElement(lambda, mu, kappa);
}

}  // namespace

JacobiGroupElement random_element(int n, int m, int word_length, Rng& rng) {
  if (word_length < 0) throw std::invalid_argument("random_element: word_length must be >= 0");
  JacobiGroupElement g = JacobiGroupElement::identity(n, m);
  for (int step = 0; step < word_length; ++step) {
    const int kind = rng.uniform_int(0, 2);
    if (kind == 0) {
      const RMat b = symmetrized(random_matrix(n, n, rng, -1.0, 1.0));
      g = jacobi_mul(g, gen_translation(b, random_heisenberg(n, m, rng)));
    } else if (kind == 1) {
      // h = E + perturbation, rejected while nearly singular
      RMat h;
      do {
        h = RMat::Identity(n, n) + random_matrix(n, n, rng, -0.3, 0.3);
      } while (std::abs(h.determinant()) < 0.1);
      g = jacobi_mul(g, gen_gl(h, m));
    } else {
      g = jacobi_mul(g, gen_sigma(n, m));
    }
  }
  return g;
}

SiegelPoint random_siegel_point(int n, Rng& rng) {
  const RMat x = symmetrized(random_matrix(n, n, rng, -1.0, 1.0));
  const RMat gmat = random_matrix(n, n, rng, -0.5, 0.5);
  const RMat y = rng.uniform(0.5, 1.5) * RMat::Identity(n, n) + gmat * gmat.transpose();
  return SiegelPoint(x.cast<cplx>() + cplx(0, 1) * y.cast<cplx>());
}

JacobiPoint random_jacobi_point(int n, int m, Rng& rng) {
  const SiegelPoint z = random_siegel_point(n, rng);
  const CMat w = random_matrix(m, n, rng, -1.0, 1.0).cast<cplx>() +
                 cplx(0, 1) * random_matrix(m, n, rng, -1.0, 1.0).cast<cplx>();
  return JacobiPoint(z, w);
}

TangentVector random_tangent(int n, int m, Rng& rng) {
  const CMat dz = symmetrized(CMat(random_matrix(n, n, rng, -1.0, 1.0).cast<cplx>() +
                                   cplx(0, 1) * random_matrix(n, n, rng, -1.0, 1.0).cast<cplx>()));
  const CMat dw = random_matrix(m, n, rng, -1.0, 1.0).cast<cplx>() +
                  cplx(0, 1) * random_matrix(m, n, rng, -1.0, 1.0).cast<cplx>();
  return TangentVector(dz, dw);
}

}  // namespace sj
