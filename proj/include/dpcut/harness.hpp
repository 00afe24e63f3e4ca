#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpcut/graph.hpp"
#include "dpcut/privacy.hpp"

namespace dpcut {

struct ExperimentConfig {
  std::string input_path;  // exactly one of input_path / generator
  std::string generator;   // spec string; "{n}" substituted in sweeps
  uint64_t generator_seed = 1;

  // laplace_baseline | dense | sparse | sparse_base | pipeline | decompose |
  // app:max_cut | app:max_bisection | app:max_k_cut | app:min_bisection
  std::string mechanism;

  double epsilon = 1.0;
  double delta = 1e-6;
  double alpha = 0.25;
  double gamma = 0.3;
  double eta = 0.1;
  int k = 2;
  double psi = 0.0;  // decompose; 0 picks the pipeline default

  std::vector<uint64_t> seeds{1};
  int cut_sample_count = 1000;
  uint64_t cut_seed = 12345;
  std::vector<int> sweep_n;  // non-empty: repeat per n with "{n}" substituted
  std::vector<double> sweep_epsilon;  // non-empty: repeat per epsilon instead
  bool mw_trace = false;  // sparse_base only: write <label>_trace.jsonl

  // Constant overrides.
  double bound_constant = 4.0;
  double c_prime = 1.0;
  double c_delta = 1.0;
  double c_s = 1.0;
  double psi_boost = 0.0;
  double lambda = 0.0;  // 0: 1/n^10
  int mw_rounds = 20;
  int boost_copies = 0;
  int witness_restarts = 8;
  int distance_restarts = 6;
  int sweep_restarts = 8;
  std::string solver = "local_search";

  bool noiseless = false;
  std::string output_dir = ".";
  std::string label = "experiment";
};

ExperimentConfig parse_config_json(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& c);

struct ReportRow {
  std::string mechanism;
  uint64_t seed = 0;
  int n = 0;
  double epsilon = 0.0;
  double max_abs_err = 0.0;
  double max_slack = 0.0;
  double mean_abs_err = 0.0;
  long edge_count = 0;
  bool negative_weights = false;
  long bound_violations = 0;  // dense only: cuts past the per-size error bound
  double ledger_epsilon = 0.0;
  double ledger_delta = 0.0;
  double delta_budgeted = 0.0;
  double objective_synth = 0.0;
  double objective_input = 0.0;
  double baseline_objective = 0.0;
  long parts = 0;
  double inter_weight = 0.0;
  double min_part_sparsity = 0.0;
  long depth = 0;
  double depth_cap = 0.0;
  double wall_seconds = 0.0;  // logged to stdout only; reports stay bit-stable
};

struct SolutionDump {
  std::string mechanism;
  uint64_t seed = 0;
  std::string json;
};

struct ErrorReport {
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  std::vector<SolutionDump> solutions;  // app mechanisms only
  std::vector<std::pair<std::string, std::string>> artifacts;  // (name, contents)
  bool has_fitted_exponent = false;
  double fitted_exponent = 0.0;  // of median max slack vs n (or vs epsilon)
};

// The cut protocol shared by every mechanism: all proper cuts when n <= 16,
// otherwise cut_sample_count uniform subsets plus all singletons and all
// weighted-degree-ordered sweep prefixes, seeded by cut_seed so comparisons
// pair up across mechanisms.
std::vector<std::vector<int>> evaluation_cuts(const WeightedGraph& g, int sample_count, uint64_t cut_seed);

ErrorReport run_experiment(const ExperimentConfig& config);
ErrorReport compare_baselines(const ExperimentConfig& config);

std::string report_to_csv(const ErrorReport& report);
std::string report_to_json(const ErrorReport& report);
// Writes <label>.csv and <label>.json under output_dir; returns the paths.
std::vector<std::string> write_report(const ErrorReport& report);

}  // namespace dpcut
