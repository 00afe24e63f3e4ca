#pragma once

#include <cstdint>
#include <map>

#include "dpcut/graph.hpp"
#include "dpcut/privacy.hpp"

namespace dpcut {

struct DenseSynthOptions {
  PrivacyBudget budget;
  double lambda = 1e-10;        // per-run failure probability target
  uint64_t seed = 0;
  double bound_constant = 4.0;  // c in the per-cut bound below
  bool noiseless = false;       // debug: sigma forced to 0
};

struct DenseSynthResult {
  WeightedGraph graph;
  double sigma = 0.0;
  double lambda = 0.0;
  PrivacyBudget budget_charged;
  double bound_constant = 4.0;
};

// Per-edge Gaussian noise on every vertex pair (non-edges included) followed
// by a clamp at zero. The unclamped weight vector is the Gaussian mechanism
// at l2 sensitivity 1; the clamp is post-processing, so the output stays
// (eps, delta)-DP and non-negative. Requires delta > 0.
DenseSynthResult dense_synth(const WeightedGraph& g, const DenseSynthOptions& opt);

// Closed-form per-cut bound B(s) = sigma(eps, delta) * s * sqrt(c n ln n ln(1/lambda)),
// monotone in s, n, 1/eps, log(1/delta) and log(1/lambda).
double dense_error_bound(int n, double s, PrivacyBudget budget, double lambda, double c = 4.0);

// Graph with possibly-negative weights; output type of the Laplace baseline,
// which deliberately skips clamping.
struct SignedGraph {
  int n = 0;
  std::map<std::pair<int, int>, double> weights;  // u < v
  bool has_negative = false;

  double total_weight() const;
};

double signed_cut_weight(const SignedGraph& g, const std::vector<int>& subset);

// Baseline: Laplace(1/eps) added to every pair, pure eps-DP, no clamp.
SignedGraph laplace_baseline(const WeightedGraph& g, double epsilon, uint64_t seed, bool noiseless = false);

}  // namespace dpcut
