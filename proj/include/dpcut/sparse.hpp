#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dpcut/cut_norm.hpp"
#include "dpcut/graph.hpp"
#include "dpcut/privacy.hpp"

namespace dpcut {

struct SparseSynthOptions {
  PrivacyBudget budget;
  int rounds = 20;
  uint64_t seed = 0;
  bool noiseless = false;
  int witness_restarts = 8;
  bool trace_graphs = false;  // keep per-round snapshots in the trace
};

struct MwRoundTrace {
  int round = 0;
  int witness_rows = 0;
  int witness_cols = 0;
  double measured = 0.0;  // rectangle discrepancy before noise
  double noisy = 0.0;
  WeightedGraph snapshot;  // populated only when trace_graphs is set
};

// Multiplicative-weights synthetic graph: estimate the total weight with
// Laplace noise at (eps/2, 0), start from the uniform graph of that total,
// then for each of T rounds find a high-discrepancy rectangle with
// cut_norm_heuristic, measure it with Laplace noise at (eps/(2T), delta/T),
// and scale the pairs inside the symmetrized rectangle by exp(+-eta) with
// eta = 1/sqrt(T), renormalizing the total each round.
WeightedGraph sparse_synth_base(const WeightedGraph& g, const SparseSynthOptions& opt,
                                BudgetLedger* ledger = nullptr, std::vector<MwRoundTrace>* trace = nullptr);

// Closed form c' * sqrt(W n ln n / eps) * ln^2(n ln n / delta).
double sparse_error_bound(double total_weight, int n, PrivacyBudget budget, double c_prime = 1.0);

using BaseMechanism = std::function<WeightedGraph(const WeightedGraph&, PrivacyBudget, uint64_t seed)>;

struct BoostOptions {
  PrivacyBudget budget;
  int copies = 0;                               // 0: ceil(10 ln n)
  std::optional<double> delta_threshold;        // unset: median base-run error bound
  uint64_t seed = 0;
  int distance_restarts = 6;
  int rounds = 20;  // recorded in the result; forwarded by the default base
};

struct SparseSynthResult {
  WeightedGraph graph;
  int rounds = 0;
  double delta_hat = 0.0;  // threshold used for the pairwise test
  int candidates = 0;      // L
  int chosen_index = -1;
  bool empty_fallback = false;
};

// Run L independent base-mechanism copies at (eps/L, delta/L) each, estimate
// all pairwise cut-norm distances, and return the first copy within
// 2*delta_hat of more than half the copies. Falls back to the empty graph
// (flagged) when no copy qualifies.
SparseSynthResult boost_median(const BaseMechanism& base, const WeightedGraph& g, const BoostOptions& opt,
                               BudgetLedger* ledger = nullptr);

// boost_median over sparse_synth_base with the options carried over.
SparseSynthResult boosted_sparse_synth(const WeightedGraph& g, const BoostOptions& opt,
                                       const SparseSynthOptions& base_opt, BudgetLedger* ledger = nullptr);

// One JSON object per round: discrepancies, witness sizes, budget spent.
std::string mw_trace_to_jsonl(const std::vector<MwRoundTrace>& trace, PrivacyBudget per_round);

}  // namespace dpcut
