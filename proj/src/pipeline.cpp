#include "dpcut/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpcut/dense.hpp"
#include "dpcut/rng.hpp"

namespace dpcut {

double delta_budget(int n, PrivacyBudget budget, double alpha, double c_delta, double log_n_power,
                    double log_inv_delta_power) {
  if (n < 2) return 0.0;
  if (budget.epsilon <= 0.0 || budget.delta <= 0.0 || alpha <= 0.0)
    return std::numeric_limits<double>::infinity();
  return c_delta * std::pow(n, 1.25) * std::pow(std::log(n), log_n_power) *
         std::pow(std::log(1.0 / budget.delta), log_inv_delta_power) /
         (std::sqrt(alpha) * budget.epsilon);
}

SynthReport dp_cut_synth(const WeightedGraph& g, const PipelineOptions& opt) {
  if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) throw std::invalid_argument("alpha must be in (0, 1)");
  if (opt.enforce_ranges && !opt.noiseless) {
    if (!(opt.budget.epsilon > 0.0 && opt.budget.epsilon < 0.5) ||
        !(opt.budget.delta > 0.0 && opt.budget.delta < 0.5))
      throw std::invalid_argument("dp_cut_synth needs 0 < epsilon, delta < 1/2");
  }

  int n = g.vertex_count();
  SynthReport rep;
  rep.alpha = opt.alpha;
  rep.delta_budgeted = opt.noiseless ? 0.0 : delta_budget(n, opt.budget, opt.alpha, opt.c_delta,
                                                          opt.delta_log_n_power, opt.delta_log_inv_delta_power);
  rep.graph = WeightedGraph(n);
  if (n == 0) return rep;

  double share_sum = opt.budget_shares[0] + opt.budget_shares[1] + opt.budget_shares[2];
  if (!(opt.budget_shares[0] > 0.0 && opt.budget_shares[1] > 0.0 && opt.budget_shares[2] > 0.0))
    throw std::invalid_argument("budget shares must be positive");
  PrivacyBudget decomp_share = opt.budget.scaled(opt.budget_shares[0] / share_sum);
  PrivacyBudget sparse_share = opt.budget.scaled(opt.budget_shares[1] / share_sum);
  PrivacyBudget dense_share = opt.budget.scaled(opt.budget_shares[2] / share_sum);
  NoiseStream seeds(opt.seed, "dp_cut_synth");

  // The decomposition pre-condition is stated against its per-call budget,
  // so the floor here is the schedule-split one.
  double psi;
  if (opt.psi_override.has_value()) {
    psi = *opt.psi_override;
  } else if (opt.noiseless || n < 2) {
    psi = 1e-12;
  } else {
    double boost = opt.psi_boost > 0.0 ? opt.psi_boost : 8.0 * std::log(n);
    psi = boost * decomposition_psi_floor(n, decomp_share, opt.bound_constant) / opt.alpha;
    if (psi <= 0.0) psi = 1e-12;
  }
  rep.psi_used = psi;

  DecomposeOptions dopt;
  dopt.budget = decomp_share;
  dopt.seed = seeds.bits(1);
  dopt.noiseless = opt.noiseless;
  dopt.bound_constant = opt.bound_constant;
  dopt.restarts = opt.sweep_restarts;
  rep.decomposition = expander_decompose(g, psi, dopt);
  rep.ledger.charge("pipeline:decomposition", decomp_share);

  // Edges not inside any part.
  std::vector<int> part_of(n, -1);
  for (size_t i = 0; i < rep.decomposition.parts.size(); ++i)
    for (int v : rep.decomposition.parts[i]) part_of[v] = static_cast<int>(i);
  WeightedGraph g_sparse(n);
  for (const auto& [uv, w] : g.edges())
    if (part_of[uv.first] != part_of[uv.second]) g_sparse.set_edge(uv.first, uv.second, w);
  rep.sparse_input_weight = g_sparse.total_weight();

  BoostOptions bopt;
  bopt.budget = sparse_share;
  bopt.copies = opt.boost_copies;
  bopt.seed = seeds.bits(2);
  bopt.distance_restarts = opt.distance_restarts;
  SparseSynthOptions base_opt;
  base_opt.rounds = opt.mw_rounds;
  base_opt.noiseless = opt.noiseless;
  base_opt.witness_restarts = opt.witness_restarts;
  rep.sparse_part = boosted_sparse_synth(g_sparse, bopt, base_opt);
  rep.ledger.charge("pipeline:sparse_mechanism", sparse_share);

  // Dense mechanism per part; disjoint parts make this a single charge.
  double lambda = n >= 2 ? std::pow(static_cast<double>(n), -10.0) : 1e-10;
  for (size_t i = 0; i < rep.decomposition.parts.size(); ++i) {
    const auto& part = rep.decomposition.parts[i];
    InducedSubgraph sub = induced_subgraph(g, part);
    DenseSynthOptions denseopt;
    denseopt.budget = dense_share;
    denseopt.lambda = lambda;
    denseopt.seed = seeds.bits(100 + i);
    denseopt.bound_constant = opt.bound_constant;
    denseopt.noiseless = opt.noiseless;
    DenseSynthResult part_synth = dense_synth(sub.graph, denseopt);
    for (const auto& [uv, w] : part_synth.graph.edges())
      rep.graph.set_edge(sub.global_ids[uv.first], sub.global_ids[uv.second], w);
  }
  rep.ledger.charge("pipeline:dense_parts", dense_share);

  // Inter-part pairs come from the sparse synthesis only.
  for (const auto& [uv, w] : rep.sparse_part.graph.edges())
    if (part_of[uv.first] != part_of[uv.second]) rep.graph.set_edge(uv.first, uv.second, w);

  return rep;
}

namespace {

// Inverse of a dense SPD matrix by Gauss-Jordan with partial pivoting.
std::vector<double> invert_dense(std::vector<double> m, int n) {
  std::vector<double> inv(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i) * n + i] = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(m[static_cast<size_t>(r) * n + col]) > std::fabs(m[static_cast<size_t>(pivot) * n + col]))
        pivot = r;
    if (m[static_cast<size_t>(pivot) * n + col] == 0.0) throw std::runtime_error("singular Laplacian system");
    if (pivot != col)
      for (int c = 0; c < n; ++c) {
        std::swap(m[static_cast<size_t>(pivot) * n + c], m[static_cast<size_t>(col) * n + c]);
        std::swap(inv[static_cast<size_t>(pivot) * n + c], inv[static_cast<size_t>(col) * n + c]);
      }
    double d = m[static_cast<size_t>(col) * n + col];
    for (int c = 0; c < n; ++c) {
      m[static_cast<size_t>(col) * n + c] /= d;
      inv[static_cast<size_t>(col) * n + c] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = m[static_cast<size_t>(r) * n + col];
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        m[static_cast<size_t>(r) * n + c] -= f * m[static_cast<size_t>(col) * n + c];
        inv[static_cast<size_t>(r) * n + c] -= f * inv[static_cast<size_t>(col) * n + c];
      }
    }
  }
  return inv;
}

std::vector<std::vector<int>> graph_components(const WeightedGraph& g) {
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
    comp[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int u : adj[v])
        if (comp[u] < 0) {
          comp[u] = 1;
          stack.push_back(u);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace

std::vector<EdgeResistance> effective_resistances(const WeightedGraph& g) {
  std::vector<EdgeResistance> out;
  out.reserve(g.edge_count());
  for (const auto& comp : graph_components(g)) {
    int nc = static_cast<int>(comp.size());
    if (nc < 2) continue;
    std::vector<int> local(g.vertex_count(), -1);
    for (int i = 0; i < nc; ++i) local[comp[i]] = i;
    // L + J/nc is nonsingular on a connected component and its inverse
    // differs from the pseudoinverse only by J/nc, which cancels in
    // resistance differences.
    std::vector<double> m(static_cast<size_t>(nc) * nc, 1.0 / nc);
    for (const auto& [uv, w] : g.edges()) {
      int lu = local[uv.first], lv = local[uv.second];
      if (lu < 0 || lv < 0) continue;
      m[static_cast<size_t>(lu) * nc + lu] += w;
      m[static_cast<size_t>(lv) * nc + lv] += w;
      m[static_cast<size_t>(lu) * nc + lv] -= w;
      m[static_cast<size_t>(lv) * nc + lu] -= w;
    }
    std::vector<double> inv = invert_dense(std::move(m), nc);
    for (const auto& [uv, w] : g.edges()) {
      int lu = local[uv.first], lv = local[uv.second];
      if (lu < 0 || lv < 0) continue;
      double r = inv[static_cast<size_t>(lu) * nc + lu] + inv[static_cast<size_t>(lv) * nc + lv] -
                 2.0 * inv[static_cast<size_t>(lu) * nc + lv];
      out.push_back({uv.first, uv.second, w, r});
    }
  }
  std::sort(out.begin(), out.end(), [](const EdgeResistance& a, const EdgeResistance& b) {
    return std::make_pair(a.u, a.v) < std::make_pair(b.u, b.v);
  });
  return out;
}

SparsifierOutput er_sparsify(const WeightedGraph& g, const ErOptions& opt) {
  if (!(opt.gamma > 0.0 && opt.gamma < 1.0)) throw std::invalid_argument("gamma must be in (0, 1)");
  int n = g.vertex_count();
  SparsifierOutput out;
  out.gamma = opt.gamma;
  out.graph = WeightedGraph(n);
  double ln_n = std::log(std::max(n, 2));
  out.edge_cap = opt.sample_constant * n * ln_n / (opt.gamma * opt.gamma);

  NoiseStream stream(opt.seed, "er_sparsify");
  uint64_t idx = 0;
  for (const auto& er : effective_resistances(g)) {
    double p = std::min(1.0, opt.sample_constant * er.weight * er.resistance * ln_n / (opt.gamma * opt.gamma));
    if (p >= 1.0) {
      out.graph.set_edge(er.u, er.v, er.weight);
    } else if (p > 0.0 && stream.uniform(idx) < p) {
      out.graph.set_edge(er.u, er.v, er.weight / p);
    }
    ++idx;
  }
  out.edge_count = out.graph.edge_count();
  return out;
}

DpPipelineResult dp_sparse_pipeline(const WeightedGraph& g, const PipelineOptions& opt, double gamma,
                                    double sample_constant) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must be in (0, 1)");
  double gamma_prime = gamma / 100.0;
  PipelineOptions synth_opt = opt;
  synth_opt.alpha = gamma_prime;
  DpPipelineResult res;
  res.gamma = gamma;
  res.synth = dp_cut_synth(g, synth_opt);
  ErOptions er;
  er.gamma = gamma_prime;
  er.seed = mix64(opt.seed ^ 0xe5u);
  er.sample_constant = sample_constant;
  res.output = er_sparsify(res.synth.graph, er);
  res.synth.ledger.charge("pipeline:er_sparsify (post-processing)", PrivacyBudget(0.0, 0.0));
  return res;
}

}  // namespace dpcut
