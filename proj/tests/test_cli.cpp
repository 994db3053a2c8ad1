#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

// exit-code and round-trip contract of the command-line tool

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SJSPACE_BIN) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buffer.data(), buffer.size(), pipe) != nullptr) result.output += buffer.data();
  const int status = pclose(pipe);
  result.exit_code = WEXITSTATUS(status);
  return result;
}

const char* kIdentityElement =
    R"({"M": [[1,0],[0,1]], "lambda": [[0]], "mu": [[0]], "kappa": [[0]]})";
const char* kSigmaElement =
    R"({"M": [[0,-1],[1,0]], "lambda": [[0]], "mu": [[0]], "kappa": [[0]]})";
const char* kPointI1 = R"({"Z": [[[0,1]]], "W": [[[1,0]]]})";

}  // namespace

TEST_CASE("act subcommand") {
  SUBCASE("identity echoes the point") {
    const RunResult r = run_cli(std::string("act --element '") + kIdentityElement +
                                "' --point '" + kPointI1 + "'");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["Z"][0][0][1].get<double>() == doctest::Approx(1.0));
    CHECK(j["W"][0][0][0].get<double>() == doctest::Approx(1.0));
  }
  SUBCASE("sigma on (i, 1) gives (i, -i)") {
    const RunResult r = run_cli(std::string("act --element '") + kSigmaElement + "' --point '" +
                                kPointI1 + "'");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["Z"][0][0][0].get<double>() == doctest::Approx(0.0));
    CHECK(j["Z"][0][0][1].get<double>() == doctest::Approx(1.0));
    CHECK(j["W"][0][0][0].get<double>() == doctest::Approx(0.0));
    CHECK(j["W"][0][0][1].get<double>() == doctest::Approx(-1.0));
  }
  SUBCASE("malformed JSON exits 2") {
    CHECK(run_cli("act --element 'not json' --point '{}'").exit_code == 2);
  }
  SUBCASE("structurally wrong JSON exits 2") {
    CHECK(run_cli(std::string("act --element '") + kIdentityElement +
                  "' --point '{\"Z\": [[[0,1]]]}'")
              .exit_code == 2);
  }
  SUBCASE("domain error exits 1") {
    // Im Z negative definite: a parseable but invalid point
    const RunResult r = run_cli(std::string("act --element '") + kIdentityElement +
                                "' --point '{\"Z\": [[[0,-1]]], \"W\": [[[0,0]]]}'");
    CHECK(r.exit_code == 1);
  }
}

TEST_CASE("reduce subcommand") {
  SUBCASE("reduces into the classical domain") {
    const RunResult r = run_cli(R"(reduce --point '{"Z": [[[0.3,0.2]]], "W": [[[0,0]]]}')");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    const double x = j["reduced"]["Z"][0][0][0].get<double>();
    const double y = j["reduced"]["Z"][0][0][1].get<double>();
    CHECK(std::abs(x) <= 0.5 + 1e-9);
    CHECK(x * x + y * y >= 1.0 - 1e-9);
    CHECK(j.contains("certificate"));
  }
  SUBCASE("unsupported degree exits 1") {
    // n = 4 point: valid JSON, valid Siegel point, unsupported by reduction
    nlohmann::json z = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) {
      auto row = nlohmann::json::array();
      for (int j = 0; j < 4; ++j) row.push_back({0.0, i == j ? 1.0 : 0.0});
      z.push_back(row);
    }
    nlohmann::json point{{"Z", z}};
    const RunResult r = run_cli("reduce --point '" + point.dump() + "'");
    CHECK(r.exit_code == 1);
  }
}

TEST_CASE("volume subcommand") {
  const RunResult r = run_cli("volume --n 2");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["volume"].get<double>() ==
        doctest::Approx(std::pow(3.14159265358979323846, 3) / 270).epsilon(1e-12));
}

TEST_CASE("verify subcommand") {
  SUBCASE("unknown suite exits 2") {
    CHECK(run_cli("verify no-such-suite").exit_code == 2);
  }
  SUBCASE("volumes suite passes and reports are canonical JSON") {
    const RunResult r = run_cli("verify volumes --seed 42");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["suite"] == "volumes");
    CHECK(j["pass"].get<bool>());
    // canonical serialization round-trips byte-for-byte
    CHECK(nlohmann::json::parse(j.dump()).dump() == j.dump());
  }
  SUBCASE("same seed gives byte-identical reports") {
    const RunResult a = run_cli("verify curvature --seed 7");
    const RunResult b = run_cli("verify curvature --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
  }
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("act").exit_code == 2);  // missing required options
}

TEST_CASE("spectral subcommands") {
  SUBCASE("bessel value matches the closed form at s = 1/2") {
    const RunResult r = run_cli("spectral bessel --s-re 0.5 --z-re 2.0");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    const double expected = std::sqrt(3.14159265358979323846 / 4.0) * std::exp(-2.0);
    CHECK(j["K"][0].get<double>() == doctest::Approx(expected).epsilon(1e-9));
  }
  SUBCASE("riemann check") {
    const RunResult r = run_cli(R"(spectral riemann --omega '[[[0,1]]]')");
    CHECK(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.output)["ok"].get<bool>());
  }
}
