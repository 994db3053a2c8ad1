#pragma once

#include "sj/group.hpp"
#include "sj/types.hpp"

// shared helpers for the test binaries

namespace sjtest {

inline double max_abs_diff(const sj::CMat& a, const sj::CMat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const sj::RMat& a, const sj::RMat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline sj::CMat cmat1(sj::cplx v) {
  sj::CMat m(1, 1);
  m(0, 0) = v;
  return m;
}

inline sj::JacobiPoint point11(sj::cplx z, sj::cplx w) {
  return sj::JacobiPoint(sj::SiegelPoint(cmat1(z)), cmat1(w));
}

}  // namespace sjtest
