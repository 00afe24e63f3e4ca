// Command-line driver: dataset generation, experiment runs, baseline
// comparisons, decomposition dumps and the scalar DP audit.
//
// Exit codes: 0 ok, 1 config error, 2 runtime error, 3 check failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dpcut/dense.hpp"
#include "dpcut/expander.hpp"
#include "dpcut/graph.hpp"
#include "dpcut/harness.hpp"
#include "dpcut/pipeline.hpp"
#include "dpcut/privacy.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheck = 3;

dpcut::ExperimentConfig config_from(const std::string& config_path, const std::string& inline_json) {
  if (!config_path.empty()) return dpcut::load_config(config_path);
  return dpcut::parse_config_json(inline_json);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"differentially private cut sparsification toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph and write it as an edge list");
  std::string gen_spec, gen_out;
  uint64_t gen_seed = 1;
  gen->add_option("--spec", gen_spec, "generator spec, e.g. gnp:n=64,p=0.5,w=1")->required();
  gen->add_option("--out", gen_out, "output edge-list path")->required();
  gen->add_option("--seed", gen_seed, "generator seed");

  // run
  auto* run = app.add_subcommand("run", "run one mechanism and write CSV/JSON reports");
  std::string run_config, run_json;
  double run_max_slack_budget = -1.0;
  run->add_option("--config", run_config, "config JSON file");
  run->add_option("--config-json", run_json, "inline config JSON");
  run->add_option("--check-slack-budget", run_max_slack_budget,
                  "fail (exit 3) when any row's max_slack exceeds this value");

  // compare
  auto* cmp = app.add_subcommand("compare", "run laplace_baseline, dense and pipeline side by side");
  std::string cmp_config, cmp_json;
  cmp->add_option("--config", cmp_config, "config JSON file");
  cmp->add_option("--config-json", cmp_json, "inline config JSON");

  // decompose
  auto* dec = app.add_subcommand("decompose", "run the private expander decomposition and dump JSON");
  std::string dec_input, dec_gen, dec_out;
  double dec_psi = 0.0, dec_eps = 1.0, dec_delta = 1e-6;
  uint64_t dec_seed = 1, dec_gen_seed = 1;
  bool dec_noiseless = false, dec_no_floor = false;
  dec->add_option("--input", dec_input, "edge-list path");
  dec->add_option("--gen", dec_gen, "generator spec");
  dec->add_option("--gen-seed", dec_gen_seed, "generator seed");
  dec->add_option("--psi", dec_psi, "sparsity target")->required();
  dec->add_option("--epsilon", dec_eps, "privacy epsilon");
  dec->add_option("--delta", dec_delta, "privacy delta");
  dec->add_option("--seed", dec_seed, "mechanism seed");
  dec->add_flag("--noiseless", dec_noiseless, "debug: zero noise");
  dec->add_flag("--no-floor", dec_no_floor, "skip the psi floor check");
  dec->add_option("--out", dec_out, "output JSON path (default stdout)");

  // audit
  auto* aud = app.add_subcommand("audit", "empirical epsilon of a scalar noise mechanism");
  std::string aud_family = "laplace", aud_out;
  double aud_eps = 1.0, aud_delta = 1e-5, aud_sens = 1.0;
  long aud_trials = 1000000;
  int aud_bins = 40;
  uint64_t aud_seed = 1;
  double aud_expect = -1.0, aud_tolerance = 0.1;
  aud->add_option("--family", aud_family, "laplace | gaussian");
  aud->add_option("--epsilon", aud_eps, "target epsilon (sets the scale)");
  aud->add_option("--delta", aud_delta, "delta for the gaussian family");
  aud->add_option("--sensitivity", aud_sens, "query sensitivity");
  aud->add_option("--trials", aud_trials, "Monte Carlo trials per input");
  aud->add_option("--bins", aud_bins, "histogram bins");
  aud->add_option("--seed", aud_seed, "noise seed");
  aud->add_option("--expect-epsilon", aud_expect, "fail (exit 3) when |hat - expected| > tolerance * expected");
  aud->add_option("--tolerance", aud_tolerance, "relative tolerance for --expect-epsilon");
  aud->add_option("--out", aud_out, "output JSON path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      dpcut::save_edge_list(dpcut::generate_from_spec(gen_spec, gen_seed), gen_out);
      std::printf("wrote %s\n", gen_out.c_str());
      return kExitOk;
    }

    if (run->parsed() || cmp->parsed()) {
      dpcut::ExperimentConfig config =
          run->parsed() ? config_from(run_config, run_json) : config_from(cmp_config, cmp_json);
      dpcut::ErrorReport report =
          run->parsed() ? dpcut::run_experiment(config) : dpcut::compare_baselines(config);
      auto paths = dpcut::write_report(report);
      for (const auto& p : paths) std::printf("wrote %s\n", p.c_str());
      for (const auto& row : report.rows)
        std::printf("%s seed=%llu n=%d max_abs=%.6g max_slack=%.6g wall=%.3fs\n", row.mechanism.c_str(),
                    static_cast<unsigned long long>(row.seed), row.n, row.max_abs_err, row.max_slack,
                    row.wall_seconds);
      if (report.has_fitted_exponent) std::printf("fitted_exponent=%.6g\n", report.fitted_exponent);
      if (run->parsed() && run_max_slack_budget >= 0.0)
        for (const auto& row : report.rows)
          if (row.max_slack > run_max_slack_budget) {
            std::fprintf(stderr, "check failed: seed %llu max_slack %.6g > budget %.6g\n",
                         static_cast<unsigned long long>(row.seed), row.max_slack, run_max_slack_budget);
            return kExitCheck;
          }
      return kExitOk;
    }

    if (dec->parsed()) {
      if (dec_input.empty() == dec_gen.empty())
        throw std::invalid_argument("decompose: exactly one of --input / --gen is required");
      dpcut::WeightedGraph g = dec_input.empty() ? dpcut::generate_from_spec(dec_gen, dec_gen_seed)
                                                 : dpcut::load_edge_list(dec_input);
      dpcut::DecomposeOptions opt;
      opt.budget = dpcut::PrivacyBudget(dec_eps, dec_delta);
      opt.seed = dec_seed;
      opt.noiseless = dec_noiseless;
      opt.enforce_floor = !dec_no_floor;
      dpcut::Decomposition d = dpcut::expander_decompose(g, dec_psi, opt);
      std::string json = dpcut::decomposition_to_json(d);
      if (dec_out.empty()) {
        std::printf("%s\n", json.c_str());
      } else {
        std::ofstream f(dec_out);
        if (!f) throw std::runtime_error("cannot write '" + dec_out + "'");
        f << json << '\n';
        std::printf("wrote %s\n", dec_out.c_str());
      }
      return kExitOk;
    }

    if (aud->parsed()) {
      dpcut::NoiseSpec spec;
      spec.seed = aud_seed;
      if (aud_family == "laplace") {
        spec.family = dpcut::NoiseFamily::laplace;
        spec.scale = 1.0 / aud_eps;
      } else if (aud_family == "gaussian") {
        spec.family = dpcut::NoiseFamily::gaussian;
        spec.scale = dpcut::gaussian_sigma_for(aud_eps, aud_delta);
      } else {
        throw std::invalid_argument("audit: family must be laplace or gaussian");
      }
      dpcut::AuditResult res = dpcut::audit_scalar_mechanism(spec, aud_sens, aud_trials, aud_bins);
      std::string json = res.to_json();
      if (aud_out.empty()) {
        std::printf("%s\n", json.c_str());
      } else {
        std::ofstream f(aud_out);
        if (!f) throw std::runtime_error("cannot write '" + aud_out + "'");
        f << json << '\n';
        std::printf("wrote %s\n", aud_out.c_str());
      }
      if (aud_expect > 0.0 && std::fabs(res.epsilon_hat - aud_expect) > aud_tolerance * aud_expect) {
        std::fprintf(stderr, "check failed: epsilon_hat %.6g outside %.6g +- %.0f%%\n", res.epsilon_hat,
                     aud_expect, 100.0 * aud_tolerance);
        return kExitCheck;
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}
