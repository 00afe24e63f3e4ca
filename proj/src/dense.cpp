#include "dpcut/dense.hpp"

#include <cmath>
#include <stdexcept>

#include "dpcut/rng.hpp"

namespace dpcut {

DenseSynthResult dense_synth(const WeightedGraph& g, const DenseSynthOptions& opt) {
  if (!opt.noiseless && opt.budget.delta <= 0.0)
    throw std::invalid_argument("dense_synth is approximate-DP only (delta > 0)");
  if (!(opt.lambda > 0.0 && opt.lambda < 0.5)) throw std::invalid_argument("lambda must be in (0, 1/2)");

  DenseSynthResult res;
  res.sigma = opt.noiseless ? 0.0 : gaussian_sigma_for(opt.budget.epsilon, opt.budget.delta);
  res.lambda = opt.lambda;
  res.budget_charged = opt.budget;
  res.bound_constant = opt.bound_constant;

  int n = g.vertex_count();
  res.graph = WeightedGraph(n);
  NoiseStream stream(opt.seed, "dense_synth");
  uint64_t k = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++k) {
      double w = g.edge(u, v) + stream.gaussian(k, res.sigma);
      if (w > 0.0) res.graph.set_edge(u, v, w);
    }
  return res;
}

double dense_error_bound(int n, double s, PrivacyBudget budget, double lambda, double c) {
  if (n < 2) return 0.0;
  double sigma = gaussian_sigma_for(budget.epsilon, budget.delta);
  return sigma * s * std::sqrt(c * n * std::log(n) * std::log(1.0 / lambda));
}

double SignedGraph::total_weight() const {
  double s = 0.0;
  for (const auto& [uv, w] : weights) s += w;
  return s;
}

double signed_cut_weight(const SignedGraph& g, const std::vector<int>& subset) {
  std::vector<char> in(g.n, 0);
  for (int v : subset) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("vertex id out of range");
    in[v] = 1;
  }
  double s = 0.0;
  for (const auto& [uv, w] : g.weights)
    if (in[uv.first] != in[uv.second]) s += w;
  return s;
}

SignedGraph laplace_baseline(const WeightedGraph& g, double epsilon, uint64_t seed, bool noiseless) {
  if (epsilon <= 0.0) throw std::invalid_argument("laplace baseline needs epsilon > 0");
  SignedGraph out;
  out.n = g.vertex_count();
  NoiseStream stream(seed, "laplace_baseline");
  double scale = noiseless ? 0.0 : 1.0 / epsilon;
  uint64_t k = 0;
  for (int u = 0; u < out.n; ++u)
    for (int v = u + 1; v < out.n; ++v, ++k) {
      double w = g.edge(u, v) + stream.laplace(k, scale);
      if (w != 0.0) out.weights[{u, v}] = w;
      if (w < 0.0) out.has_negative = true;
    }
  return out;
}

}  // namespace dpcut
