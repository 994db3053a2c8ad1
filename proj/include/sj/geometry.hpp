#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sj/group.hpp"
#include "sj/types.hpp"

// Invariant geometry of H_n x C^(m,n) in a fixed real chart.
//
// Chart ordering (canonical across the whole library, CLI included):
//   x_{uv} for u <= v lexicographic, then y_{uv}, then u_{kl} row-major,
//   then v_{kl};  N = n(n+1) + 2mn coordinates.
// The basis tangent for an off-diagonal x_{uv} (u < v) perturbs BOTH matrix
// entries (u,v) and (v,u), so at (iE, 0) off-diagonal metric entries are 2A.
//
// The metric is the two-parameter invariant family
//   ds^2 = A s(Y^-1 dZ Y^-1 dZb)
//        + B { s(Y^-1 tV V Y^-1 dZ Y^-1 dZb) + s(Y^-1 t(dW) dWb)
//              - s(V Y^-1 dZ Y^-1 t(dWb)) - s(V Y^-1 dZb Y^-1 t(dW)) }
// and its Laplacian is assembled from five trace terms (alpha..epsilon below).

namespace sj {

struct MetricParams {
  double A = 1.0;
  double B = 1.0;
  MetricParams() = default;
  MetricParams(double a, double b) : A(a), B(b) {
    if (!(A > 0.0) || !(B > 0.0)) throw std::invalid_argument("MetricParams: A, B must be > 0");
  }
};

// finite-difference steps, scaled per-coordinate by (1 + |c|)
struct FdSteps {
  double first = 1e-5;
  double second = 1e-4;
};

class Chart {
 public:
  Chart(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }

  RVec point_coords(const JacobiPoint& p) const;
  JacobiPoint point_from_coords(const RVec& c) const;
  RVec tangent_coords(const TangentVector& v) const;
  TangentVector tangent_from_coords(const RVec& c) const;
  TangentVector basis_tangent(int i) const;

  // p displaced by delta in chart coordinates (symmetric entries mirrored)
  JacobiPoint displaced(const JacobiPoint& p, const RVec& delta) const;

 private:
  int n_, m_, dim_;
  std::vector<std::string> labels_;
};

struct MetricTensor {
  RMat g;  // N x N, symmetric positive definite
  Chart chart;
  JacobiPoint basepoint;
};

// the A-part s(Y^-1 dZ Y^-1 dZb) and the B-part (b)+(c)+(d), separately
double metric_term_base(const JacobiPoint& p, const TangentVector& v);
double metric_term_jacobi(const JacobiPoint& p, const TangentVector& v);

double metric_quadratic_form(const JacobiPoint& p, const TangentVector& v,
                             const MetricParams& params);

// g_ij by polarization of the quadratic form over the chart basis
MetricTensor metric_tensor(const JacobiPoint& p, const MetricParams& params);

// tJ g(act(g_elem, p)) J with J the chart Jacobian of the exact tangent map;
// equals metric_tensor(p) by invariance
MetricTensor pullback_metric(const JacobiGroupElement& g_elem, const JacobiPoint& p,
                             const MetricParams& params);

// (det Y)^-(n+m+1)
double volume_density(const JacobiPoint& p);

// Scalar fields on the Siegel-Jacobi space. Callables must be safe to invoke
// concurrently; evaluation failures propagate to the caller.
struct ScalarField {
  std::function<cplx(const JacobiPoint&)> eval;
  bool real_valued = false;
  std::string label;

  cplx operator()(const JacobiPoint& p) const { return eval(p); }
};

// Wirtinger derivative matrices of f at p, built from central finite
// differences in the real chart:
//   (d/dZ)_{uv} = (1+delta_uv)/2 * 1/2 (d/dx_uv - i d/dy_uv)   (n x n)
//   (d/dW)_{kl} =                 1/2 (d/du_kl - i d/dv_kl)    (stored m x n)
enum class Wirt { Z, Zbar, W, Wbar };
CMat wirtinger_first(const ScalarField& f, const JacobiPoint& p, Wirt which,
                     const FdSteps& steps = {});

// All first and mixed second Wirtinger derivatives of f at p, derived from a
// single chart-coordinate gradient/Hessian.
class WirtingerCalculus {
 public:
  WirtingerCalculus(const ScalarField& f, const JacobiPoint& p, const FdSteps& steps = {});

  CMat first(Wirt which) const;  // Z-types n x n (weighted), W-types m x n

  // unweighted mixed second derivatives; Z indices are matrix index pairs
  cplx d2_z_zbar(int i1, int j1, int i2, int j2) const;
  cplx d2_w_wbar(int k1, int l1, int k2, int l2) const;
  cplx d2_zbar_w(int i, int j, int k, int l) const;
  cplx d2_wbar_z(int k, int l, int i, int j) const;

  const Chart& chart() const { return chart_; }

 private:
  int zidx(int i, int j, bool imag) const;
  int widx(int k, int l, bool imag) const;

  Chart chart_;
  RVec coords_;
  CVec grad_;
  CMat hess_;
};

// the five trace terms of the invariant Laplacian, each including its factor 4:
//   alpha   = 4 s(Y t(Y dZb) dZ)
//   beta    = 4 s(Y dW t(dWb))
//   gamma   = 4 s(V Y^-1 tV t(Y dWb) dW)
//   delta   = 4 s(V t(Y dZb) dW)
//   epsilon = 4 s(tV t(Y dWb) dZ)
// Laplacian = (alpha + gamma + delta + epsilon)/A + beta/B
struct LaplacianTerms {
  cplx alpha{}, beta{}, gamma{}, delta{}, epsilon{};
  cplx total(const MetricParams& params) const {
    return (alpha + gamma + delta + epsilon) / params.A + beta / params.B;
  }
};

LaplacianTerms laplacian_terms(const ScalarField& f, const JacobiPoint& p,
                               const FdSteps& steps = {});
cplx laplacian_apply(const ScalarField& f, const JacobiPoint& p, const MetricParams& params,
                     const FdSteps& steps = {});

// Independent oracle: the coordinate Laplace-Beltrami operator
//   (det g)^-1/2 sum_i d_i((det g)^1/2 g^ij d_j f)
// computed with finite differences of both f and the metric field.
double laplace_beltrami_apply(const ScalarField& f, const JacobiPoint& p,
                              const MetricParams& params, const FdSteps& steps = {});

// Scalar curvature of an arbitrary coordinate metric field, from finite
// differences of g: Christoffels, curvature contraction, R = g^ij Ric_ij.
// One Richardson extrapolation level on the step.
using MetricField = std::function<RMat(const RVec&)>;
double scalar_curvature_of_field(const MetricField& g, const RVec& coords, double step,
                                 bool richardson = true);

double scalar_curvature(const JacobiPoint& p, const MetricParams& params,
                        const FdSteps& steps = {});

}  // namespace sj
