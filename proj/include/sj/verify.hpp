#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sj/geometry.hpp"
#include "sj/json_io.hpp"

// Bundled verification suites. Each suite runs a set of named checks at the
// configured shapes and seed and is deterministic given the config: per-suite
// RNGs are derived from the seed, summation orders are fixed, and reports are
// sorted by check name.

namespace sj {

struct RunConfig {
  std::vector<std::pair<int, int>> shapes{{1, 1}, {2, 1}, {1, 2}, {2, 2}};
  std::uint64_t seed = 12345;
  FdSteps fd{};

  double tol_curvature = 1e-3;
  double tol_curvature_spread = 2e-3;
  double tol_metric_invariance = 1e-8;
  double tol_laplacian_oracle = 1e-3;
  double tol_laplacian_invariance = 1e-3;
  double tol_siegel_specialization = 1e-10;
  double tol_maass_specialization = 1e-4;
  double tol_berndt_metric = 1e-10;
  double tol_berndt_laplacian = 1e-6;
  double tol_eigenfunction = 1e-4;
  double tol_volume = 1e-12;
  double tol_volume_cov = 1e-8;
  double tol_roundtrip = 1e-9;
  double tol_periodicity = 1e-12;
  double tol_gram = 1e-8;
  double tol_gram_12 = 1e-6;
  double tol_torus_eigen = 1e-6;
  double tol_bessel = 1e-9;

  int metric_pairs = 100;
  int pd_points = 200;
  int reduction_points = 200;
  int curvature_points = 5;
  int volume_points = 50;
};

RunConfig config_from_json(const json& j);

struct CheckRecord {
  std::string name;
  std::string inputs;    // digest of the inputs/parameters the check ran with
  double measured = 0.0;
  std::string expected;  // value or property being checked
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  bool pass = false;
  double duration_seconds = 0.0;
};

const std::vector<std::string>& suite_names();
VerificationReport run_suite(const std::string& name, const RunConfig& cfg);

// canonical serialization; the wall-clock duration is excluded by default so
// that reports are byte-identical for a fixed seed
json report_to_json(const VerificationReport& report, bool include_duration = false);

// shared by suites and tests: smooth real-valued fields on H_n x C^(m,n)
std::vector<ScalarField> smooth_test_fields(int n, int m);

}  // namespace sj
