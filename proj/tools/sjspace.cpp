// Command-line surface over the library: group actions, metric/Laplacian
// evaluation, curvature, reduction, Siegel volumes, torus spectral checks,
// and the bundled verification suites.
//
// Exit codes: 0 success, 1 domain failure, 2 usage/parse failure.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "sj/json_io.hpp"
#include "sj/reduction.hpp"
#include "sj/spectral.hpp"
#include "sj/verify.hpp"

namespace {

using sj::json;

json parse_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw sj::JsonError("cannot open file: " + arg.substr(1));
    return json::parse(in);
  }
  return json::parse(arg);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

sj::ScalarField field_by_label(const std::string& label, sj::cplx s, double a) {
  for (const auto& cand : sj::eigenfunction_catalog(s, a))
    if (cand.label == label) return cand.field;
  throw std::invalid_argument("unknown field label: " + label);
}

int run(int argc, char** argv) {
  CLI::App app{"numerics for the Siegel-Jacobi space: invariant metrics, Laplacians,\n"
               "reduction to fundamental domains, and torus spectral checks"};
  app.require_subcommand(1);

  std::string element_arg, point_arg, omega_arg, field_label = "y^s", suite = "all";
  std::string config_path, index_a_arg, index_b_arg, at_arg;
  double param_a = 1.0, param_b = 1.0;
  double s_re = 2.0, s_im = 0.0, z_re = 1.0, z_im = 0.0, fourier_a = 1.0;
  int volume_n = 1;
  std::uint64_t seed = 12345;

  auto* act = app.add_subcommand("act", "apply a group element to a point");
  act->add_option("--element", element_arg, "group element JSON (or @file)")->required();
  act->add_option("--point", point_arg, "point JSON {\"Z\":..., \"W\":...} (or @file)")->required();

  auto* metric = app.add_subcommand("metric", "metric tensor in the canonical chart");
  metric->add_option("--point", point_arg)->required();
  metric->add_option("--A", param_a, "metric parameter A > 0");
  metric->add_option("--B", param_b, "metric parameter B > 0");

  auto* laplacian = app.add_subcommand("laplacian", "apply the invariant Laplacian to a catalog field (n=m=1)");
  laplacian->add_option("--point", point_arg)->required();
  laplacian->add_option("--field", field_label, "field label from the eigenfunction catalog");
  laplacian->add_option("--s-re", s_re, "Re s for the catalog");
  laplacian->add_option("--s-im", s_im, "Im s for the catalog");
  laplacian->add_option("--a", fourier_a, "Fourier parameter a (nonzero)");
  laplacian->add_option("--A", param_a);
  laplacian->add_option("--B", param_b);

  auto* curvature = app.add_subcommand("curvature", "scalar curvature at a point");
  curvature->add_option("--point", point_arg)->required();
  curvature->add_option("--A", param_a);
  curvature->add_option("--B", param_b);

  auto* reduce = app.add_subcommand("reduce", "reduce into the fundamental domain (n <= 3)");
  reduce->add_option("--point", point_arg, "point JSON; W optional")->required();

  auto* volume = app.add_subcommand("volume", "Siegel volume vol(F_n)");
  volume->add_option("--n", volume_n, "degree (1..20)")->required();

  auto* spectral = app.add_subcommand("spectral", "torus spectral operations");
  auto* bessel = spectral->add_subcommand("bessel", "K_s(z) by quadrature");
  bessel->add_option("--s-re", s_re);
  bessel->add_option("--s-im", s_im);
  bessel->add_option("--z-re", z_re)->required();
  bessel->add_option("--z-im", z_im);
  auto* riemann = spectral->add_subcommand("riemann", "Riemann period conditions for Omega");
  riemann->add_option("--omega", omega_arg, "complex matrix JSON")->required();
  auto* torus = spectral->add_subcommand("torus-basis", "evaluate E_{Omega;A,B}");
  torus->add_option("--omega", omega_arg)->required();
  torus->add_option("--index-a", index_a_arg, "integer m x n matrix JSON")->required();
  torus->add_option("--index-b", index_b_arg, "integer m x n matrix JSON")->required();
  torus->add_option("--at", at_arg, "complex m x n matrix JSON")->required();
  spectral->require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run a bundled verification suite");
  verify->add_option("suite", suite, "one of: metric-invariance, laplacian, curvature, volumes, reduction, spectral, all");
  verify->add_option("--seed", seed, "RNG seed (default 12345)");
  verify->add_option("--config", config_path, "JSON config overriding defaults (or set SJSPACE_CONFIG)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help text or the parse error
    return code == 0 ? 0 : 2;
  }

  if (*act) {
    const auto g = sj::element_from_json(parse_json_arg(element_arg));
    const auto p = sj::jacobi_point_from_json(parse_json_arg(point_arg));
    emit(sj::to_json(sj::act_jacobi(g, p)));
    return 0;
  }
  if (*metric) {
    const auto p = sj::jacobi_point_from_json(parse_json_arg(point_arg));
    emit(sj::to_json(sj::metric_tensor(p, sj::MetricParams(param_a, param_b))));
    return 0;
  }
  if (*laplacian) {
    const auto p = sj::jacobi_point_from_json(parse_json_arg(point_arg));
    if (p.n() != 1 || p.m() != 1)
      throw std::invalid_argument("laplacian: catalog fields are defined for n = m = 1");
    const auto f = field_by_label(field_label, sj::cplx(s_re, s_im), fourier_a);
    const sj::cplx value = sj::laplacian_apply(f, p, sj::MetricParams(param_a, param_b));
    emit(json{{"field", field_label}, {"value", {value.real(), value.imag()}}});
    return 0;
  }
  if (*curvature) {
    const auto p = sj::jacobi_point_from_json(parse_json_arg(point_arg));
    emit(json{{"scalar_curvature",
               sj::scalar_curvature(p, sj::MetricParams(param_a, param_b))}});
    return 0;
  }
  if (*reduce) {
    const json pj = parse_json_arg(point_arg);
    if (pj.contains("W") && sj::cmat_from_json(pj.at("W")).rows() > 0) {
      emit(sj::to_json(sj::jacobi_reduce(sj::jacobi_point_from_json(pj))));
    } else {
      emit(sj::to_json(sj::siegel_reduce(sj::siegel_point_from_json(pj))));
    }
    return 0;
  }
  if (*volume) {
    emit(json{{"n", volume_n}, {"volume", sj::siegel_volume(volume_n)}});
    return 0;
  }
  if (*spectral) {
    if (*bessel) {
      const sj::cplx value = sj::bessel_k(sj::cplx(s_re, s_im), sj::cplx(z_re, z_im));
      emit(json{{"s", {s_re, s_im}}, {"z", {z_re, z_im}}, {"K", {value.real(), value.imag()}}});
      return 0;
    }
    if (*riemann) {
      emit(sj::to_json(sj::riemann_conditions(sj::cmat_from_json(parse_json_arg(omega_arg)))));
      return 0;
    }
    const auto omega = sj::SiegelPoint(sj::cmat_from_json(parse_json_arg(omega_arg)));
    const sj::RMat ar = sj::rmat_from_json(parse_json_arg(index_a_arg));
    const sj::RMat br = sj::rmat_from_json(parse_json_arg(index_b_arg));
    sj::TorusBasisIndex idx{ar.cast<int>(), br.cast<int>()};
    const auto f = sj::torus_basis_fn(omega, idx);
    const sj::cplx value = f(sj::cmat_from_json(parse_json_arg(at_arg)));
    emit(json{{"value", {value.real(), value.imag()}}});
    return 0;
  }
  if (*verify) {
    const auto& names = sj::suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
      std::cerr << "unknown suite: " << suite << "\n";
      return 2;
    }
    sj::RunConfig cfg;
    if (config_path.empty())
      if (const char* env = std::getenv("SJSPACE_CONFIG")) config_path = env;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw sj::JsonError("cannot open config: " + config_path);
      cfg = sj::config_from_json(json::parse(in));
    }
    if (verify->count("--seed")) cfg.seed = seed;
    const sj::VerificationReport report = sj::run_suite(suite, cfg);
    emit(sj::report_to_json(report));
    std::cerr << "suite " << suite << (report.pass ? " passed" : " FAILED") << " in "
              << report.duration_seconds << " s\n";
    return report.pass ? 0 : 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sj::JsonError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
