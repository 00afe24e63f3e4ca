#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "dpcut/expander.hpp"
#include "dpcut/graph.hpp"
#include "dpcut/privacy.hpp"
#include "dpcut/sparse.hpp"

namespace dpcut {

struct PipelineOptions {
  PrivacyBudget budget;
  double alpha = 0.25;
  uint64_t seed = 0;
  bool noiseless = false;
  // Relative budget weights for decomposition / sparse / dense; equal thirds
  // by default. Normalized, so any positive scale works.
  std::array<double, 3> budget_shares{1.0, 1.0, 1.0};

  // Constants; the paper leaves these inside O(.) factors.
  double psi_boost = 0.0;  // 0: 8 ln n
  double bound_constant = 4.0;
  double c_prime = 1.0;
  double c_delta = 1.0;
  double delta_log_n_power = 2.0;
  double delta_log_inv_delta_power = 2.0;
  std::optional<double> psi_override;

  int mw_rounds = 20;
  int witness_restarts = 8;
  int boost_copies = 0;  // 0: ceil(10 ln n)
  int distance_restarts = 6;
  int sweep_restarts = 8;
  bool enforce_ranges = true;  // eps, delta in (0, 1/2); disabled by debug callers
};

struct SynthReport {
  WeightedGraph graph;
  double delta_budgeted = 0.0;
  double alpha = 0.0;
  double psi_used = 0.0;
  Decomposition decomposition;
  SparseSynthResult sparse_part;
  double sparse_input_weight = 0.0;  // w(E_sparse)
  BudgetLedger ledger;
};

// Algorithm-1 composition: decompose at psi = psi_boost * floor / alpha with
// an (eps/3, delta/3) share, synthesize the inter-part edges with the boosted
// sparse mechanism, each part with the dense mechanism at lambda = 1/n^10,
// and merge (intra-part pairs from the part synthesis, inter-part pairs from
// the sparse synthesis).
SynthReport dp_cut_synth(const WeightedGraph& g, const PipelineOptions& opt);

// Closed form c_delta * n^1.25 * ln(n)^p * ln(1/delta)^q / (sqrt(alpha) * eps).
double delta_budget(int n, PrivacyBudget budget, double alpha, double c_delta = 1.0, double log_n_power = 2.0,
                    double log_inv_delta_power = 2.0);

struct ErOptions {
  double gamma = 0.3;
  uint64_t seed = 0;
  double sample_constant = 1.0;  // c_s
};

struct SparsifierOutput {
  WeightedGraph graph;
  double gamma = 0.0;
  size_t edge_count = 0;
  double edge_cap = 0.0;  // c_s * n * ln n / gamma^2
};

struct EdgeResistance {
  int u, v;
  double weight;
  double resistance;
};

// Effective resistance of every edge from the component-wise Laplacian
// pseudoinverse (dense solve).
std::vector<EdgeResistance> effective_resistances(const WeightedGraph& g);

// Spielman-Srivastava style sampling: keep each edge with probability
// p_e = min(1, c_s * w_e * R_e * ln n / gamma^2) at weight w_e / p_e.
SparsifierOutput er_sparsify(const WeightedGraph& g, const ErOptions& opt);

struct DpPipelineResult {
  SparsifierOutput output;
  SynthReport synth;
  double gamma = 0.0;
};

// Full pipeline at gamma' = gamma/100: dp_cut_synth with alpha = gamma',
// then er_sparsify(gamma') as post-processing.
DpPipelineResult dp_sparse_pipeline(const WeightedGraph& g, const PipelineOptions& opt, double gamma,
                                    double sample_constant = 1.0);

}  // namespace dpcut
