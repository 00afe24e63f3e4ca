#include "dpcut/expander.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "dpcut/dense.hpp"
#include "dpcut/rng.hpp"

namespace dpcut {

OracleConstants oracle_constants(int n) {
  if (n <= 20) return {1.0, 1.0};
  double ln = std::log(n);
  return {4.0 * ln * ln, 2.0};
}

namespace {

// Tie-break order on vertex subsets: the membership string b0 b1 ... b_{n-1}
// compared lexicographically, so at the first vertex where two sets differ
// the one not containing it is smaller.
bool subset_less(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++i;
      ++j;
      continue;
    }
    return a[i] > b[j];
  }
  return i == a.size() && j < b.size();
}

// Same order on bitmasks: the set lacking the lowest differing vertex wins.
bool mask_subset_less(uint64_t a, uint64_t b) {
  uint64_t diff = a ^ b;
  if (diff == 0) return false;
  return ((a >> std::countr_zero(diff)) & 1u) == 0;
}

struct FlatEdge {
  int u, v;
  double w;
};

std::vector<FlatEdge> flat_edges(const WeightedGraph& g) {
  std::vector<FlatEdge> e;
  e.reserve(g.edge_count());
  for (const auto& [uv, w] : g.edges()) e.push_back({uv.first, uv.second, w});
  return e;
}

SparseCutResult exact_most_balanced(const WeightedGraph& g, double psi) {
  int n = g.vertex_count();
  auto edges = flat_edges(g);
  uint64_t best_mask = 0;
  int best_size = 0;
  for (uint64_t mask = 1; mask < (1ull << n); ++mask) {
    int size = std::popcount(mask);
    if (2 * size > n || size < best_size) continue;
    double w = 0.0;
    for (const auto& e : edges)
      if (((mask >> e.u) & 1u) != ((mask >> e.v) & 1u)) w += e.w;
    if (w > psi * size) continue;
    if (size > best_size || (size == best_size && mask_subset_less(mask, best_mask))) {
      best_size = size;
      best_mask = mask;
    }
  }
  SparseCutResult res;
  res.psi = psi;
  res.certified = true;
  for (int v = 0; v < n; ++v)
    if ((best_mask >> v) & 1u) res.subset.push_back(v);
  return res;
}

std::vector<std::vector<int>> connected_components(const WeightedGraph& g) {
  int n = g.vertex_count();
  std::vector<std::vector<int>> adj(n);
  for (const auto& [uv, w] : g.edges()) {
    adj[uv.first].push_back(uv.second);
    adj[uv.second].push_back(uv.first);
  }
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s}, members;
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int u : adj[v])
        if (comp[u] < 0) {
          comp[u] = comp[s];
          stack.push_back(u);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

// Largest union of whole components with total size <= n/2 (zero-weight
// cut). Subset-sum over component sizes; deterministic reconstruction.
std::vector<int> best_component_union(const std::vector<std::vector<int>>& comps, int n) {
  int cap = n / 2;
  std::vector<int> reach(cap + 1, -2);  // component index that first reached the size, -2 = unreachable
  reach[0] = -1;
  for (size_t c = 0; c < comps.size(); ++c) {
    int sz = static_cast<int>(comps[c].size());
    for (int s = cap; s >= sz; --s)
      if (reach[s] == -2 && reach[s - sz] != -2 && reach[s - sz] < static_cast<int>(c)) reach[s] = static_cast<int>(c);
  }
  int best = cap;
  while (best > 0 && reach[best] == -2) --best;
  std::vector<int> ids;
  int s = best;
  while (s > 0) {
    int c = reach[s];
    ids.insert(ids.end(), comps[c].begin(), comps[c].end());
    s -= static_cast<int>(comps[c].size());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Second eigenvector of the normalized Laplacian via power iteration on
// I + D^-1/2 A D^-1/2 with the trivial eigenvector deflated.
std::vector<double> fiedler_coordinates(const WeightedGraph& g, uint64_t seed) {
  int n = g.vertex_count();
  std::vector<double> deg = g.weighted_degrees();
  std::vector<double> isqrt(n, 0.0);
  for (int v = 0; v < n; ++v) isqrt[v] = deg[v] > 0.0 ? 1.0 / std::sqrt(deg[v]) : 0.0;
  auto edges = flat_edges(g);

  std::vector<double> top(n);
  double norm = 0.0;
  for (int v = 0; v < n; ++v) {
    top[v] = std::sqrt(std::max(deg[v], 0.0));
    norm += top[v] * top[v];
  }
  norm = std::sqrt(norm);
  for (double& t : top) t /= norm > 0.0 ? norm : 1.0;

  NoiseStream stream(seed, "fiedler");
  std::vector<double> x(n), y(n);
  for (int v = 0; v < n; ++v) x[v] = stream.uniform(v) - 0.5;
  for (int iter = 0; iter < 600; ++iter) {
    double dot = std::inner_product(x.begin(), x.end(), top.begin(), 0.0);
    for (int v = 0; v < n; ++v) x[v] -= dot * top[v];
    for (int v = 0; v < n; ++v) y[v] = x[v];  // the identity part of I + B
    for (const auto& e : edges) {
      double c = e.w * isqrt[e.u] * isqrt[e.v];
      y[e.u] += c * x[e.v];
      y[e.v] += c * x[e.u];
    }
    double len = std::sqrt(std::inner_product(y.begin(), y.end(), y.begin(), 0.0));
    if (len == 0.0) break;
    for (int v = 0; v < n; ++v) x[v] = y[v] / len;
  }
  for (int v = 0; v < n; ++v) x[v] *= isqrt[v];  // back to the combinatorial embedding
  return x;
}

void consider_sweep(const WeightedGraph& g, const std::vector<int>& order, double psi,
                    std::vector<int>& best, bool& found) {
  int n = g.vertex_count();
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  // Incremental prefix cut weights along the ordering.
  std::vector<double> deg = g.weighted_degrees();
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& [uv, w] : g.edges()) {
    adj[uv.first].emplace_back(uv.second, w);
    adj[uv.second].emplace_back(uv.first, w);
  }
  double cut = 0.0;
  for (int k = 0; k < n - 1; ++k) {
    int v = order[k];
    double to_prefix = 0.0;
    for (const auto& [u, w] : adj[v])
      if (pos[u] < k) to_prefix += w;
    cut += deg[v] - 2.0 * to_prefix;
    int size = std::min(k + 1, n - (k + 1));
    if (cut <= psi * size) {
      std::vector<int> cand;
      cand.reserve(size);
      if (k + 1 <= n / 2)
        cand.assign(order.begin(), order.begin() + k + 1);
      else
        cand.assign(order.begin() + k + 1, order.end());
      std::sort(cand.begin(), cand.end());
      if (!found || cand.size() > best.size() || (cand.size() == best.size() && subset_less(cand, best))) {
        best = std::move(cand);
        found = true;
      }
    }
  }
}

SparseCutResult heuristic_most_balanced(const WeightedGraph& g, double psi, const SparseCutOptions& opt) {
  int n = g.vertex_count();
  SparseCutResult res;
  res.psi = psi;
  res.certified = false;

  auto comps = connected_components(g);
  if (comps.size() > 1) {
    res.subset = best_component_union(comps, n);
    return res;
  }

  std::vector<double> coord = fiedler_coordinates(g, opt.seed);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (coord[a] != coord[b]) return coord[a] < coord[b];
    return a < b;
  });

  std::vector<int> best;
  bool found = false;
  consider_sweep(g, order, psi, best, found);

  double lo = *std::min_element(coord.begin(), coord.end());
  double hi = *std::max_element(coord.begin(), coord.end());
  double spread = (hi - lo) > 0.0 ? (hi - lo) : 1.0;
  NoiseStream stream(opt.seed, "sweep_restarts");
  std::vector<double> jittered(n);
  for (int r = 0; r < opt.restarts; ++r) {
    for (int v = 0; v < n; ++v)
      jittered[v] = coord[v] + 0.2 * spread * (stream.uniform(static_cast<uint64_t>(r) * n + v) - 0.5);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (jittered[a] != jittered[b]) return jittered[a] < jittered[b];
      return a < b;
    });
    consider_sweep(g, order, psi, best, found);
  }

  if (found) res.subset = std::move(best);
  return res;
}

}  // namespace

SparseCutResult most_balanced_sparse_cut(const WeightedGraph& g, double psi, const SparseCutOptions& opt) {
  if (!(psi > 0.0)) throw std::invalid_argument("most_balanced_sparse_cut needs psi > 0");
  int n = g.vertex_count();
  if (n <= 20) return exact_most_balanced(g, psi);
  return heuristic_most_balanced(g, psi, opt);
}

double psi_floor(int n, PrivacyBudget budget, double lambda, double d_exp, double bound_constant) {
  return 10.0 * dense_error_bound(n, 1.0, budget, lambda, bound_constant) * d_exp;
}

SparseCutResult dp_most_balanced_sparse_cut(const WeightedGraph& g, double psi, const DpSparseCutOptions& opt) {
  if (!(psi > 0.0)) throw std::invalid_argument("dp_most_balanced_sparse_cut needs psi > 0");
  int n = g.vertex_count();
  OracleConstants oc = oracle_constants(n);
  if (opt.enforce_floor && !opt.noiseless && n >= 2) {
    double floor = psi_floor(n, opt.budget, opt.lambda, oc.d_exp, opt.bound_constant);
    if (psi < floor) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "psi %.6g below floor %.6g", psi, floor);
      throw std::invalid_argument(buf);
    }
  }

  DenseSynthOptions dopt;
  dopt.budget = opt.budget;
  dopt.lambda = opt.lambda;
  dopt.seed = opt.seed;
  dopt.bound_constant = opt.bound_constant;
  dopt.noiseless = opt.noiseless;
  DenseSynthResult synth = dense_synth(g, dopt);

  // Clamp the weight range to make the ratio between extremes O(n^2).
  WeightedGraph clamped(n);
  double drop_below = psi / (10.0 * n);
  double cap = psi * n;
  for (const auto& [uv, w] : synth.graph.edges()) {
    if (w < drop_below) continue;
    clamped.set_edge(uv.first, uv.second, std::min(w, cap));
  }

  SparseCutOptions sopt;
  sopt.restarts = opt.restarts;
  sopt.seed = mix64(opt.seed ^ 0x5cu);
  SparseCutResult res = most_balanced_sparse_cut(clamped, 0.8 * psi, sopt);
  res.psi = psi;
  return res;
}

double ScheduleParams::s_bar_at(int level) const {
  if (level < 1) throw std::invalid_argument("levels are 1-based");
  if (level <= static_cast<int>(s_bar.size())) return s_bar[level - 1];
  double v = s_bar.back();
  double shrink = s_bar.size() >= 2 ? s_bar[0] / s_bar[1] : 2.0;
  for (int i = static_cast<int>(s_bar.size()); i < level; ++i) v /= shrink;
  return v;
}

ScheduleParams build_schedule(int n, double psi, PrivacyBudget budget, double c_exp, double c_size) {
  if (n < 2) throw std::invalid_argument("schedule needs n >= 2");
  OracleConstants oc = oracle_constants(n);
  ScheduleParams sp;
  sp.c_exp = c_exp > 0.0 ? c_exp : 2.0 * oc.d_exp;
  sp.c_size = c_size > 0.0 ? c_size : oc.d_size;

  double ln_n = std::log(n);
  // Floored so n^sigma >= e even when c_exp <= e; keeps L finite.
  sp.sigma_exp = std::max(std::sqrt(std::log(sp.c_exp) / ln_n), 1.0 / std::sqrt(ln_n));
  double shrink = std::exp(sp.sigma_exp * ln_n);  // n^sigma

  double s = n / 2.0 + 1.0;
  sp.s_bar.push_back(s);
  while (s > 1.0) {
    s /= shrink;
    sp.s_bar.push_back(s);
  }
  sp.levels = static_cast<int>(sp.s_bar.size());

  for (int i = 1; i <= sp.levels; ++i) sp.psi_levels.push_back(psi * std::pow(sp.c_exp, sp.levels - i + 1));

  sp.denominator = sp.levels * sp.c_size * shrink * ln_n;
  sp.per_call = PrivacyBudget(budget.epsilon / sp.denominator, budget.delta / sp.denominator);
  sp.lambda = std::pow(static_cast<double>(n), -10.0);
  return sp;
}

double decomposition_psi_floor(int n, PrivacyBudget budget, double bound_constant, double c_exp, double c_size) {
  if (n < 2) return 0.0;
  ScheduleParams sp = build_schedule(n, 1.0, budget, c_exp, c_size);
  return psi_floor(n, sp.per_call, sp.lambda, oracle_constants(n).d_exp, bound_constant);
}

namespace {

struct DecomposeState {
  const WeightedGraph* g = nullptr;
  const DecomposeOptions* opt = nullptr;
  ScheduleParams sched;
  NoiseStream seeds{0, "decompose"};
  std::vector<std::vector<int>> parts;
  int calls = 0;
  int max_depth = 0;
};

void decompose_recurse(DecomposeState& st, const std::vector<int>& ids, int level, int depth) {
  if (depth > st.sched.denominator)
    throw std::runtime_error("expander decomposition exceeded its depth cap; oracle contract violated");
  st.max_depth = std::max(st.max_depth, depth);

  InducedSubgraph sub = induced_subgraph(*st.g, ids);

  DpSparseCutOptions copt;
  copt.budget = st.sched.per_call;
  copt.lambda = st.sched.lambda;
  copt.seed = st.seeds.bits(st.calls);
  copt.noiseless = st.opt->noiseless;
  copt.bound_constant = st.opt->bound_constant;
  copt.restarts = st.opt->restarts;
  copt.enforce_floor = false;  // checked once against the top-level psi
  st.calls++;
  // A nonempty cut always satisfies the split threshold at level L, so the
  // level index cannot pass L; treat a breach like the depth cap.
  if (level > st.sched.levels)
    throw std::runtime_error("expander decomposition exceeded its level schedule");
  double psi_level = st.sched.psi_levels[level - 1];
  SparseCutResult cut = dp_most_balanced_sparse_cut(sub.graph, psi_level, copt);

  if (ids.size() == 1 || cut.subset.empty()) {
    st.parts.push_back(ids);
    return;
  }

  double threshold = st.sched.s_bar_at(level + 1) / st.sched.c_size;
  if (static_cast<double>(cut.subset.size()) >= threshold) {
    std::vector<int> side, rest;
    std::vector<char> in(sub.graph.vertex_count(), 0);
    for (int v : cut.subset) in[v] = 1;
    for (int local = 0; local < sub.graph.vertex_count(); ++local)
      (in[local] ? side : rest).push_back(sub.global_ids[local]);
    decompose_recurse(st, side, 1, depth + 1);
    decompose_recurse(st, rest, level, depth + 1);
  } else {
    decompose_recurse(st, ids, level + 1, depth + 1);
  }
}

}  // namespace

Decomposition expander_decompose(const WeightedGraph& g, double psi, const DecomposeOptions& opt) {
  int n = g.vertex_count();
  Decomposition dec;
  dec.psi = psi;
  if (n == 0) return dec;
  if (n == 1) {
    dec.parts.push_back({0});
    dec.ledger.charge("expander_decompose", opt.budget);
    return dec;
  }
  if (!(psi > 0.0)) throw std::invalid_argument("expander_decompose needs psi > 0");

  DecomposeState st;
  st.g = &g;
  st.opt = &opt;
  st.sched = build_schedule(n, psi, opt.budget, opt.c_exp_override.value_or(0.0), opt.c_size_override.value_or(0.0));
  st.seeds = NoiseStream(opt.seed, "decompose");

  if (opt.enforce_floor && !opt.noiseless) {
    double floor = psi_floor(n, st.sched.per_call, st.sched.lambda, oracle_constants(n).d_exp, opt.bound_constant);
    if (psi < floor) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "psi %.6g below decomposition floor %.6g", psi, floor);
      throw std::invalid_argument(buf);
    }
  }

  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  decompose_recurse(st, all, 1, 1);

  dec.parts = std::move(st.parts);
  std::sort(dec.parts.begin(), dec.parts.end());
  dec.schedule = st.sched;
  dec.calls = st.calls;
  dec.max_depth = st.max_depth;
  dec.worst_path_total = st.sched.per_call.scaled(st.max_depth);
  dec.whole_tree_total = st.sched.per_call.scaled(st.calls);
  dec.ledger.charge("expander_decompose", opt.budget);

  double intra = 0.0;
  for (const auto& part : dec.parts) intra += induced_subgraph(g, part).graph.total_weight();
  dec.inter_weight = g.total_weight() - intra;
  return dec;
}

std::string decomposition_to_json(const Decomposition& d) {
  std::string out = "{\"psi\":";
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  out += num(d.psi);
  out += ",\"parts\":[";
  for (size_t i = 0; i < d.parts.size(); ++i) {
    out += i ? ",[" : "[";
    for (size_t j = 0; j < d.parts[i].size(); ++j) {
      if (j) out += ',';
      out += std::to_string(d.parts[i][j]);
    }
    out += ']';
  }
  out += "],\"inter_weight\":" + num(d.inter_weight);
  out += ",\"ledger\":[";
  for (size_t i = 0; i < d.ledger.charges().size(); ++i) {
    const auto& [label, b] = d.ledger.charges()[i];
    if (i) out += ',';
    out += "{\"label\":\"" + label + "\",\"epsilon\":" + num(b.epsilon) + ",\"delta\":" + num(b.delta) + "}";
  }
  out += "],\"schedule\":{\"levels\":" + std::to_string(d.schedule.levels);
  out += ",\"sigma\":" + num(d.schedule.sigma_exp);
  out += ",\"c_exp\":" + num(d.schedule.c_exp);
  out += ",\"c_size\":" + num(d.schedule.c_size);
  out += ",\"eps_prime\":" + num(d.schedule.per_call.epsilon);
  out += ",\"delta_prime\":" + num(d.schedule.per_call.delta);
  out += ",\"lambda\":" + num(d.schedule.lambda);
  out += ",\"calls\":" + std::to_string(d.calls);
  out += ",\"max_depth\":" + std::to_string(d.max_depth);
  out += ",\"depth_cap\":" + num(d.schedule.denominator) + "}}";
  return out;
}

}  // namespace dpcut
