#include "sj/json_io.hpp"

namespace sj {

json to_json(const CMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const RMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

cplx scalar_from_json(const json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  throw JsonError("expected complex scalar as [re, im]");
}

}  // namespace

CMat cmat_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw JsonError("expected matrix as nested arrays");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols)
      throw JsonError("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = scalar_from_json(j[i][c]);
  }
  return m;
}

RMat rmat_from_json(const json& j) {
  const CMat m = cmat_from_json(j);
  if (m.imag().cwiseAbs().maxCoeff() != 0.0) throw JsonError("expected a real matrix");
  return m.real();
}

json to_json(const SiegelPoint& z) { return json{{"Z", to_json(z.Z())}}; }

json to_json(const JacobiPoint& p) {
  return json{{"Z", to_json(p.Z())}, {"W", to_json(p.W())}};
}

SiegelPoint siegel_point_from_json(const json& j) {
  if (!j.contains("Z")) throw JsonError("point: missing \"Z\"");
  return SiegelPoint(cmat_from_json(j.at("Z")));
}

JacobiPoint jacobi_point_from_json(const json& j) {
  if (!j.contains("Z") || !j.contains("W")) throw JsonError("point: need \"Z\" and \"W\"");
  return JacobiPoint(SiegelPoint(cmat_from_json(j.at("Z"))), cmat_from_json(j.at("W")));
}

json to_json(const JacobiGroupElement& g) {
  return json{{"M", to_json(g.M.mat())},
              {"lambda", to_json(g.h.lambda())},
              {"mu", to_json(g.h.mu())},
              {"kappa", to_json(g.h.kappa())}};
}

JacobiGroupElement element_from_json(const json& j) {
  for (const char* key : {"M", "lambda", "mu", "kappa"})
    if (!j.contains(key)) throw JsonError(std::string("element: missing \"") + key + "\"");
  return JacobiGroupElement(
      SymplecticMatrix(rmat_from_json(j.at("M"))),
      HeisenbergElement(rmat_from_json(j.at("lambda")), rmat_from_json(j.at("mu")),
                        rmat_from_json(j.at("kappa"))));
}

json to_json(const MetricTensor& t) {
  return json{{"g", to_json(t.g)},
              {"labels", t.chart.labels()},
              {"basepoint", to_json(t.basepoint)}};
}

json to_json(const Certificate& c) {
  return json{{"conditions_checked", c.conditions_checked},
              {"bounds", {{"search_bound", c.search_bound}, {"samples", c.samples}}},
              {"word_length", c.word_length},
              {"seed", c.seed},
              {"iterations", c.iterations},
              {"conventions", c.conventions}};
}

json to_json(const EigenReport& r) {
  return json{{"candidate", r.candidate},
              {"points", r.points},
              {"max_residual", r.max_residual},
              {"pass", r.pass}};
}

json to_json(const RiemannCheck& r) {
  return json{{"ok", r.ok},
              {"rc1_residual", r.rc1_residual},
              {"rc2_min_eigenvalue", r.rc2_min_eigenvalue}};
}

namespace {

json imat_to_json(const IMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json to_json(const FormReduction& r) {
  return json{{"reduced", to_json(RMat(r.reduced.Y))},
              {"transform", imat_to_json(r.transform)},
              {"certificate", to_json(r.certificate)}};
}

json to_json(const SiegelReduction& r) {
  return json{{"reduced", to_json(r.reduced)},
              {"transform", to_json(r.transform.mat())},
              {"certificate", to_json(r.certificate)}};
}

json to_json(const JacobiReduction& r) {
  return json{{"reduced", to_json(r.reduced)},
              {"transform", to_json(r.transform)},
              {"certificate", to_json(r.certificate)}};
}

}  // namespace sj
