#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "dpcut/graph.hpp"
#include "dpcut/pipeline.hpp"
#include "dpcut/privacy.hpp"

namespace dpcut {

enum class CutSolver { local_search, exhaustive };

struct CutSolution {
  std::vector<std::vector<int>> partition;  // 2 parts for cut/bisection, k for k-cut
  double objective_on_synth = 0.0;
  // Filled by evaluate_on_input only; the private solvers never touch the
  // input graph after synthesis.
  double objective_on_input = std::numeric_limits<double>::quiet_NaN();
  bool padded = false;  // an isolated vertex n was appended to even the count
  PrivacyBudget budget_charged;
};

struct AppOptions {
  PrivacyBudget budget;
  double eta = 0.1;
  CutSolver solver = CutSolver::local_search;
  uint64_t seed = 0;
  int k = 2;
  bool noiseless = false;
  PipelineOptions pipeline;  // budget/alpha/seed/noiseless overwritten per call
};

// ---- Non-private solvers (post-processing; also evaluation baselines) ----

std::vector<int> max_cut_exhaustive(const WeightedGraph& g);  // n <= 20
std::vector<int> max_cut_local_search(const WeightedGraph& g, uint64_t seed, int restarts = 8);
std::vector<int> max_bisection_exhaustive(const WeightedGraph& g);  // even n <= 16
std::vector<int> max_bisection_local_search(const WeightedGraph& g, uint64_t seed, int restarts = 8);
std::vector<int> min_bisection_exhaustive(const WeightedGraph& g);  // even n <= 16
std::vector<int> min_bisection_local_search(const WeightedGraph& g, uint64_t seed, int restarts = 8);
// Assignment vector of part ids; exhaustive requires k^n <= 1e6.
std::vector<int> max_k_cut_exhaustive(const WeightedGraph& g, int k);
std::vector<int> max_k_cut_local_search(const WeightedGraph& g, int k, uint64_t seed, int restarts = 8);

double k_cut_objective(const WeightedGraph& g, const std::vector<int>& assignment);

// ---- Private wrappers: synthesize once, then solve as post-processing ----

CutSolution private_max_cut(const WeightedGraph& g, const AppOptions& opt);
CutSolution private_max_bisection(const WeightedGraph& g, const AppOptions& opt);
CutSolution private_max_k_cut(const WeightedGraph& g, const AppOptions& opt);
CutSolution private_min_bisection(const WeightedGraph& g, const AppOptions& opt);

// Evaluation-only: score a solution against the original input.
void evaluate_on_input(const WeightedGraph& g, CutSolution& sol);

}  // namespace dpcut
