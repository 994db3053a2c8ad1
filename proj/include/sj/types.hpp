#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

// Core value types for the Siegel-Jacobi space H_n x C^(m,n).
//
// Conventions used throughout the library:
//   Z = X + iY   symmetric complex n x n, Y positive definite
//   W = U + iV   complex m x n, unconstrained
//   tangents     (dZ, dW) with dZ symmetric
// All matrices are dense, double precision. Values are immutable after
// construction and safe to share across threads.

namespace sj {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

// symmetry / invariant tolerance used by constructors
inline constexpr double kSymTol = 1e-10;

inline bool is_symmetric(const CMat& a, double tol = kSymTol) {
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * (1.0 + a.cwiseAbs().maxCoeff());
}

inline bool is_symmetric(const RMat& a, double tol = kSymTol) {
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * (1.0 + a.cwiseAbs().maxCoeff());
}

// exact symmetrization, used after operations that are symmetric only up to roundoff
inline CMat symmetrized(const CMat& a) { return 0.5 * (a + a.transpose()); }
inline RMat symmetrized(const RMat& a) { return 0.5 * (a + a.transpose()); }

inline bool is_positive_definite(const RMat& y) {
  if (y.rows() == 0) return true;
  Eigen::LLT<RMat> llt(y);
  return llt.info() == Eigen::Success;
}

// Point of the Siegel upper half space H_n.
class SiegelPoint {
 public:
  explicit SiegelPoint(CMat z) : z_(std::move(z)) {
    if (z_.rows() != z_.cols()) throw std::invalid_argument("SiegelPoint: Z must be square");
    if (!is_symmetric(z_)) throw std::invalid_argument("SiegelPoint: Z must be symmetric");
    z_ = symmetrized(z_);
    if (!is_positive_definite(imag_part()))
      throw std::invalid_argument("SiegelPoint: Im Z must be positive definite");
  }

  int n() const { return static_cast<int>(z_.rows()); }
  const CMat& Z() const { return z_; }
  RMat real_part() const { return z_.real(); }
  RMat imag_part() const { return z_.imag(); }

 private:
  CMat z_;
};

// Point of the Siegel-Jacobi space: (Z, W) with W in C^(m,n).
// m = 0 is permitted (degenerates to H_n itself).
class JacobiPoint {
 public:
  JacobiPoint(SiegelPoint z, CMat w) : z_(std::move(z)), w_(std::move(w)) {
    if (w_.cols() != z_.n())
      throw std::invalid_argument("JacobiPoint: W must have n columns");
  }

  int n() const { return z_.n(); }
  int m() const { return static_cast<int>(w_.rows()); }
  const SiegelPoint& z() const { return z_; }
  const CMat& Z() const { return z_.Z(); }
  const CMat& W() const { return w_; }
  RMat X() const { return z_.real_part(); }
  RMat Y() const { return z_.imag_part(); }
  RMat U() const { return w_.real(); }
  RMat V() const { return w_.imag(); }

 private:
  SiegelPoint z_;
  CMat w_;
};

// Tangent vector at a point of H_n x C^(m,n): dZ symmetric complex, dW complex.
struct TangentVector {
  CMat dZ;  // n x n symmetric
  CMat dW;  // m x n

  TangentVector(CMat dz, CMat dw) : dZ(std::move(dz)), dW(std::move(dw)) {
    if (dZ.rows() != dZ.cols()) throw std::invalid_argument("TangentVector: dZ must be square");
    if (!is_symmetric(dZ)) throw std::invalid_argument("TangentVector: dZ must be symmetric");
    dZ = symmetrized(dZ);
    if (dW.cols() != dZ.rows()) throw std::invalid_argument("TangentVector: dW must have n columns");
  }

  static TangentVector zero(int n, int m) {
    return TangentVector(CMat::Zero(n, n), CMat::Zero(m, n));
  }

  int n() const { return static_cast<int>(dZ.rows()); }
  int m() const { return static_cast<int>(dW.rows()); }
};

}  // namespace sj
