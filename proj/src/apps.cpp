#include "dpcut/apps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dpcut/rng.hpp"

namespace dpcut {

namespace {

std::vector<int> mask_to_subset(uint64_t mask, int n) {
  std::vector<int> s;
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1u) s.push_back(v);
  return s;
}

double assignment_cut(const WeightedGraph& g, const std::vector<char>& side) {
  double s = 0.0;
  for (const auto& [uv, w] : g.edges())
    if (side[uv.first] != side[uv.second]) s += w;
  return s;
}

}  // namespace

std::vector<int> max_cut_exhaustive(const WeightedGraph& g) {
  int n = g.vertex_count();
  if (n > 20) throw std::invalid_argument("exhaustive max-cut supports n <= 20");
  if (n == 0) return {};
  uint64_t best_mask = 0;
  double best = -1.0;
  uint64_t limit = n == 1 ? 1 : (1ull << (n - 1));  // fix vertex n-1 outside S
  for (uint64_t mask = 0; mask < limit; ++mask) {
    double w = cut_weight_mask(g, mask);
    if (w > best) {
      best = w;
      best_mask = mask;
    }
  }
  return mask_to_subset(best_mask, n);
}

std::vector<int> max_cut_local_search(const WeightedGraph& g, uint64_t seed, int restarts) {
  int n = g.vertex_count();
  NoiseStream stream(seed, "max_cut_ls");
  std::vector<char> side(n), best_side(n, 0);
  double best = -1.0;
  uint64_t draw = 0;
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    for (int v = 0; v < n; ++v) side[v] = stream.bits(draw++) & 1u;
    // gain[v] = change in cut value when v flips
    std::vector<double> gain(n, 0.0);
    for (const auto& [uv, w] : g.edges()) {
      double d = side[uv.first] != side[uv.second] ? -w : w;
      gain[uv.first] += d;
      gain[uv.second] += d;
    }
    bool improved = true;
    while (improved) {
      improved = false;
      for (int v = 0; v < n; ++v) {
        if (gain[v] <= 1e-12) continue;
        side[v] ^= 1;
        gain[v] = -gain[v];
        for (const auto& [uv, w] : g.edges()) {
          int u = -1;
          if (uv.first == v)
            u = uv.second;
          else if (uv.second == v)
            u = uv.first;
          else
            continue;
          gain[u] += side[u] != side[v] ? -2.0 * w : 2.0 * w;
        }
        improved = true;
      }
    }
    double w = assignment_cut(g, side);
    if (w > best) {
      best = w;
      best_side = side;
    }
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (best_side[v]) out.push_back(v);
  return out;
}

namespace {

template <typename Better>
std::vector<int> bisection_exhaustive(const WeightedGraph& g, Better better) {
  int n = g.vertex_count();
  if (n % 2 != 0) throw std::invalid_argument("bisection needs even n (pad first)");
  if (n > 16) throw std::invalid_argument("exhaustive bisection supports n <= 16");
  if (n == 0) return {};
  uint64_t best_mask = 0;
  bool have = false;
  double best = 0.0;
  for (uint64_t mask = 1; mask < (1ull << n); ++mask) {  // vertex 0 fixed in S
    if (!(mask & 1u) || std::popcount(mask) * 2 != n) continue;
    double w = cut_weight_mask(g, mask);
    if (!have || better(w, best)) {
      best = w;
      best_mask = mask;
      have = true;
    }
  }
  return mask_to_subset(best_mask, n);
}

template <typename Better>
std::vector<int> bisection_local_search(const WeightedGraph& g, uint64_t seed, int restarts, Better better) {
  int n = g.vertex_count();
  if (n % 2 != 0) throw std::invalid_argument("bisection needs even n (pad first)");
  if (n == 0) return {};
  NoiseStream stream(seed, "bisection_ls");
  std::vector<int> ids(n);
  std::vector<char> side(n), best_side;
  double best = 0.0;
  bool have = false;
  uint64_t draw = 0;
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    std::iota(ids.begin(), ids.end(), 0);
    for (int i = n; i > 1; --i) {
      int j = static_cast<int>(stream.uniform(draw++) * i);
      if (j >= i) j = i - 1;
      std::swap(ids[i - 1], ids[j]);
    }
    for (int i = 0; i < n; ++i) side[ids[i]] = i < n / 2;
    double cur = assignment_cut(g, side);
    // First-improvement swaps across the two sides.
    bool improved = true;
    while (improved) {
      improved = false;
      for (int a = 0; a < n && !improved; ++a) {
        if (!side[a]) continue;
        for (int b = 0; b < n && !improved; ++b) {
          if (side[b]) continue;
          side[a] = 0;
          side[b] = 1;
          double w = assignment_cut(g, side);
          if (better(w, cur)) {
            cur = w;
            improved = true;
          } else {
            side[a] = 1;
            side[b] = 0;
          }
        }
      }
    }
    if (!have || better(cur, best)) {
      best = cur;
      best_side = side;
      have = true;
    }
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (best_side[v]) out.push_back(v);
  return out;
}

}  // namespace

std::vector<int> max_bisection_exhaustive(const WeightedGraph& g) {
  return bisection_exhaustive(g, [](double a, double b) { return a > b; });
}

std::vector<int> min_bisection_exhaustive(const WeightedGraph& g) {
  return bisection_exhaustive(g, [](double a, double b) { return a < b; });
}

std::vector<int> max_bisection_local_search(const WeightedGraph& g, uint64_t seed, int restarts) {
  return bisection_local_search(g, seed, restarts, [](double a, double b) { return a > b + 1e-12; });
}

std::vector<int> min_bisection_local_search(const WeightedGraph& g, uint64_t seed, int restarts) {
  return bisection_local_search(g, seed, restarts, [](double a, double b) { return a < b - 1e-12; });
}

double k_cut_objective(const WeightedGraph& g, const std::vector<int>& assignment) {
  double s = 0.0;
  for (const auto& [uv, w] : g.edges())
    if (assignment[uv.first] != assignment[uv.second]) s += w;
  return s;
}

std::vector<int> max_k_cut_exhaustive(const WeightedGraph& g, int k) {
  int n = g.vertex_count();
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  double states = std::pow(static_cast<double>(k), n);
  if (states > 1e6) throw std::invalid_argument("exhaustive k-cut needs k^n <= 1e6");
  std::vector<int> cur(n, 0), best(n, 0);
  double best_w = k_cut_objective(g, cur);
  while (true) {
    int pos = 0;
    while (pos < n && cur[pos] == k - 1) cur[pos++] = 0;
    if (pos == n) break;
    cur[pos]++;
    double w = k_cut_objective(g, cur);
    if (w > best_w) {
      best_w = w;
      best = cur;
    }
  }
  return best;
}

std::vector<int> max_k_cut_local_search(const WeightedGraph& g, int k, uint64_t seed, int restarts) {
  int n = g.vertex_count();
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  NoiseStream stream(seed, "k_cut_ls");
  std::vector<int> order(n), cur(n), best(n, 0);
  double best_w = -1.0;
  uint64_t draw = 0;
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    std::iota(order.begin(), order.end(), 0);
    for (int i = n; i > 1; --i) {
      int j = static_cast<int>(stream.uniform(draw++) * i);
      if (j >= i) j = i - 1;
      std::swap(order[i - 1], order[j]);
    }
    // Greedy: place each vertex in the part with least weight toward it.
    std::fill(cur.begin(), cur.end(), -1);
    std::vector<double> toward(k);
    for (int v : order) {
      std::fill(toward.begin(), toward.end(), 0.0);
      for (const auto& [uv, w] : g.edges()) {
        int u = uv.first == v ? uv.second : (uv.second == v ? uv.first : -1);
        if (u >= 0 && cur[u] >= 0) toward[cur[u]] += w;
      }
      cur[v] = static_cast<int>(std::min_element(toward.begin(), toward.end()) - toward.begin());
    }
    // Single-vertex moves, first improvement.
    bool improved = true;
    while (improved) {
      improved = false;
      for (int v = 0; v < n; ++v) {
        std::fill(toward.begin(), toward.end(), 0.0);
        for (const auto& [uv, w] : g.edges()) {
          int u = uv.first == v ? uv.second : (uv.second == v ? uv.first : -1);
          if (u >= 0) toward[cur[u]] += w;
        }
        int target = static_cast<int>(std::min_element(toward.begin(), toward.end()) - toward.begin());
        if (toward[target] < toward[cur[v]] - 1e-12) {
          cur[v] = target;
          improved = true;
        }
      }
    }
    double w = k_cut_objective(g, cur);
    if (w > best_w) {
      best_w = w;
      best = cur;
    }
  }
  return best;
}

namespace {

WeightedGraph pad_to_even(const WeightedGraph& g, bool& padded) {
  padded = g.vertex_count() % 2 != 0;
  if (!padded) return g;
  WeightedGraph out(g.vertex_count() + 1);
  for (const auto& [uv, w] : g.edges()) out.set_edge(uv.first, uv.second, w);
  return out;
}

std::vector<std::vector<int>> two_part_partition(const std::vector<int>& subset, int n) {
  std::vector<char> in(n, 0);
  for (int v : subset) in[v] = 1;
  std::vector<std::vector<int>> parts(2);
  for (int v = 0; v < n; ++v) parts[in[v] ? 0 : 1].push_back(v);
  return parts;
}

SynthReport synthesize(const WeightedGraph& g, const AppOptions& opt, double alpha) {
  PipelineOptions popt = opt.pipeline;
  popt.budget = opt.budget;
  popt.alpha = alpha;
  popt.seed = opt.seed;
  popt.noiseless = opt.noiseless;
  return dp_cut_synth(g, popt);
}

}  // namespace

CutSolution private_max_cut(const WeightedGraph& g, const AppOptions& opt) {
  if (!(opt.eta > 0.0 && opt.eta < 1.0)) throw std::invalid_argument("eta must be in (0, 1)");
  SynthReport rep = synthesize(g, opt, opt.eta / 100.0);
  const WeightedGraph& synth = rep.graph;  // solvers see only the synthetic graph
  std::vector<int> s;
  if (opt.solver == CutSolver::exhaustive)
    s = max_cut_exhaustive(synth);
  else
    s = max_cut_local_search(synth, mix64(opt.seed ^ 0x50u));
  CutSolution sol;
  sol.partition = two_part_partition(s, synth.vertex_count());
  sol.objective_on_synth = cut_weight(synth, s);
  sol.budget_charged = opt.budget;
  return sol;
}

CutSolution private_max_bisection(const WeightedGraph& g, const AppOptions& opt) {
  if (!(opt.eta > 0.0 && opt.eta < 1.0)) throw std::invalid_argument("eta must be in (0, 1)");
  bool padded = false;
  WeightedGraph padded_g = pad_to_even(g, padded);
  SynthReport rep = synthesize(padded_g, opt, opt.eta / 100.0);
  WeightedGraph synth = rep.graph;
  if (padded) {
    // The pad vertex must stay isolated so the balance constraint is over
    // the intended objective.
    int pad = synth.vertex_count() - 1;
    for (int v = 0; v < pad; ++v) synth.set_edge(v, pad, 0.0);
  }
  std::vector<int> s;
  if (opt.solver == CutSolver::exhaustive)
    s = max_bisection_exhaustive(synth);
  else
    s = max_bisection_local_search(synth, mix64(opt.seed ^ 0x51u));
  CutSolution sol;
  sol.partition = two_part_partition(s, synth.vertex_count());
  sol.objective_on_synth = cut_weight(synth, s);
  sol.padded = padded;
  sol.budget_charged = opt.budget;
  return sol;
}

CutSolution private_max_k_cut(const WeightedGraph& g, const AppOptions& opt) {
  if (opt.k < 1 || opt.k > g.vertex_count()) throw std::invalid_argument("k must be in [1, n]");
  if (!(opt.eta > 0.0 && opt.eta < 1.0)) throw std::invalid_argument("eta must be in (0, 1)");
  SynthReport rep = synthesize(g, opt, opt.eta / 100.0);
  const WeightedGraph& synth = rep.graph;
  int n = synth.vertex_count();
  std::vector<int> assignment;
  if (opt.solver == CutSolver::exhaustive && std::pow(static_cast<double>(opt.k), n) <= 1e6)
    assignment = max_k_cut_exhaustive(synth, opt.k);
  else
    assignment = max_k_cut_local_search(synth, opt.k, mix64(opt.seed ^ 0x52u));
  CutSolution sol;
  sol.partition.assign(opt.k, {});
  for (int v = 0; v < n; ++v) sol.partition[assignment[v]].push_back(v);
  sol.objective_on_synth = k_cut_objective(synth, assignment);
  sol.budget_charged = opt.budget;
  return sol;
}

CutSolution private_min_bisection(const WeightedGraph& g, const AppOptions& opt) {
  bool padded = false;
  WeightedGraph padded_g = pad_to_even(g, padded);
  SynthReport rep = synthesize(padded_g, opt, opt.pipeline.alpha);
  WeightedGraph synth = rep.graph;
  if (padded) {
    int pad = synth.vertex_count() - 1;
    for (int v = 0; v < pad; ++v) synth.set_edge(v, pad, 0.0);
  }
  std::vector<int> s;
  if (opt.solver == CutSolver::exhaustive)
    s = min_bisection_exhaustive(synth);
  else
    s = min_bisection_local_search(synth, mix64(opt.seed ^ 0x53u));
  CutSolution sol;
  sol.partition = two_part_partition(s, synth.vertex_count());
  sol.objective_on_synth = cut_weight(synth, s);
  sol.padded = padded;
  sol.budget_charged = opt.budget;
  return sol;
}

void evaluate_on_input(const WeightedGraph& g, CutSolution& sol) {
  bool padded = false;
  WeightedGraph eval_g = sol.padded ? pad_to_even(g, padded) : g;
  if (sol.partition.size() == 2) {
    sol.objective_on_input = cut_weight(eval_g, sol.partition[0]);
    return;
  }
  std::vector<int> assignment(eval_g.vertex_count(), 0);
  for (size_t p = 0; p < sol.partition.size(); ++p)
    for (int v : sol.partition[p]) assignment[v] = static_cast<int>(p);
  sol.objective_on_input = k_cut_objective(eval_g, assignment);
}

}  // namespace dpcut
