#pragma once

#include <json.hpp>

#include "sj/geometry.hpp"
#include "sj/group.hpp"
#include "sj/reduction.hpp"
#include "sj/spectral.hpp"

// Shared JSON formats:
//   complex scalar      [re, im]
//   complex matrix      nested row-major arrays of [re, im]
//   real matrix         nested row-major arrays of numbers
//   point               {"Z": cmatrix, "W": cmatrix}
//   group element       {"M": rmatrix, "lambda": rmatrix, "mu": rmatrix, "kappa": rmatrix}
// Emitted values re-parse to equal values (shortest round-trip doubles).

namespace sj {

using json = nlohmann::json;

// structural problems with incoming JSON (missing keys, wrong shapes);
// distinct from domain errors so the CLI can map them to usage failures
class JsonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(const CMat& m);
json to_json(const RMat& m);
CMat cmat_from_json(const json& j);
RMat rmat_from_json(const json& j);

json to_json(const SiegelPoint& z);
json to_json(const JacobiPoint& p);
JacobiPoint jacobi_point_from_json(const json& j);
SiegelPoint siegel_point_from_json(const json& j);

json to_json(const JacobiGroupElement& g);
JacobiGroupElement element_from_json(const json& j);

json to_json(const MetricTensor& t);
json to_json(const Certificate& c);
json to_json(const EigenReport& r);
json to_json(const RiemannCheck& r);
json to_json(const FormReduction& r);
json to_json(const SiegelReduction& r);
json to_json(const JacobiReduction& r);

}  // namespace sj
