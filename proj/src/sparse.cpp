#include "dpcut/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpcut/rng.hpp"

namespace dpcut {

WeightedGraph sparse_synth_base(const WeightedGraph& g, const SparseSynthOptions& opt, BudgetLedger* ledger,
                                std::vector<MwRoundTrace>* trace) {
  if (opt.rounds < 1) throw std::invalid_argument("sparse_synth_base needs rounds >= 1");
  if (!opt.noiseless && opt.budget.delta <= 0.0)
    throw std::invalid_argument("sparse_synth_base is approximate-DP only (delta > 0)");

  int n = g.vertex_count();
  int rounds = opt.rounds;
  double eps = opt.budget.epsilon;
  NoiseStream stream(opt.seed, "sparse_synth_base");

  double total = g.total_weight();
  double w_hat = total + (opt.noiseless ? 0.0 : stream.laplace(0, 2.0 / eps));
  if (w_hat < 0.0) w_hat = 0.0;
  if (ledger) ledger->charge("sparse:total_weight", PrivacyBudget(eps / 2.0, 0.0));

  size_t pairs = static_cast<size_t>(n) * (n - 1) / 2;
  std::vector<double> weight(pairs, pairs > 0 ? w_hat / static_cast<double>(pairs) : 0.0);
  auto pair_index = [n](int u, int v) {
    if (u > v) std::swap(u, v);
    return static_cast<size_t>(u) * (2 * n - u - 1) / 2 + (v - u - 1);
  };

  Matrix target = adjacency_matrix(g);
  double eta = 1.0 / std::sqrt(static_cast<double>(rounds));
  double measure_scale = opt.noiseless ? 0.0 : 2.0 * 2.0 * rounds / eps;  // sensitivity 2 at eps/(2T)

  std::vector<char> in_rows(n), in_cols(n);
  for (int t = 0; t < rounds; ++t) {
    if (ledger)
      ledger->charge("sparse:round", PrivacyBudget(eps / (2.0 * rounds), opt.budget.delta / rounds));
    if (w_hat == 0.0 || n < 2) continue;

    Matrix diff = target;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v) diff.at(u, v) -= weight[pair_index(u, v)];

    CutNormEstimate witness = cut_norm_heuristic(diff, opt.witness_restarts, stream.bits(1000 + t));
    double measured = rectangle_sum(diff, witness.rows, witness.cols);
    double noisy = measured + stream.laplace(2000 + t, measure_scale);

    if (noisy != 0.0 && !witness.rows.empty() && !witness.cols.empty()) {
      double factor = std::exp(noisy > 0.0 ? eta : -eta);
      std::fill(in_rows.begin(), in_rows.end(), 0);
      std::fill(in_cols.begin(), in_cols.end(), 0);
      for (int i : witness.rows) in_rows[i] = 1;
      for (int j : witness.cols) in_cols[j] = 1;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if ((in_rows[u] && in_cols[v]) || (in_rows[v] && in_cols[u])) weight[pair_index(u, v)] *= factor;
      double sum = 0.0;
      for (double w : weight) sum += w;
      if (sum > 0.0) {
        double scale = w_hat / sum;
        for (double& w : weight) w *= scale;
      }
    }

    if (trace) {
      MwRoundTrace row;
      row.round = t;
      row.witness_rows = static_cast<int>(witness.rows.size());
      row.witness_cols = static_cast<int>(witness.cols.size());
      row.measured = measured;
      row.noisy = noisy;
      if (opt.trace_graphs) {
        WeightedGraph snap(n);
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v)
            if (weight[pair_index(u, v)] > 0.0) snap.set_edge(u, v, weight[pair_index(u, v)]);
        row.snapshot = snap;
      }
      trace->push_back(std::move(row));
    }
  }

  WeightedGraph out(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (weight[pair_index(u, v)] > 0.0) out.set_edge(u, v, weight[pair_index(u, v)]);
  return out;
}

double sparse_error_bound(double total_weight, int n, PrivacyBudget budget, double c_prime) {
  if (total_weight < 0.0) throw std::invalid_argument("total_weight must be >= 0");
  if (n < 2 || total_weight == 0.0) return 0.0;
  if (budget.epsilon <= 0.0 || budget.delta <= 0.0) return std::numeric_limits<double>::infinity();
  double nlogn = n * std::log(n);
  double log_term = std::log(nlogn / budget.delta);
  return c_prime * std::sqrt(total_weight * nlogn / budget.epsilon) * log_term * log_term;
}

SparseSynthResult boost_median(const BaseMechanism& base, const WeightedGraph& g, const BoostOptions& opt,
                               BudgetLedger* ledger) {
  int n = g.vertex_count();
  int copies = opt.copies > 0 ? opt.copies : static_cast<int>(std::ceil(10.0 * std::log(std::max(n, 2))));
  PrivacyBudget per_copy(opt.budget.epsilon / copies, opt.budget.delta / copies);

  NoiseStream stream(opt.seed, "boost_median");
  std::vector<WeightedGraph> runs;
  runs.reserve(copies);
  for (int i = 0; i < copies; ++i) {
    runs.push_back(base(g, per_copy, stream.bits(i)));
    if (ledger) ledger->charge("boost:copy", per_copy);
  }

  double threshold;
  if (opt.delta_threshold.has_value()) {
    threshold = *opt.delta_threshold;
  } else {
    // Base-run error bound evaluated at the (released) copy totals; the
    // median keeps one outlier total from skewing the default.
    std::vector<double> bounds(copies);
    for (int i = 0; i < copies; ++i)
      bounds[i] = sparse_error_bound(runs[i].total_weight(), n, per_copy);
    std::nth_element(bounds.begin(), bounds.begin() + copies / 2, bounds.end());
    threshold = bounds[copies / 2];
  }

  // Pairwise cut-norm estimates of adjacency differences.
  std::vector<double> dist(static_cast<size_t>(copies) * copies, 0.0);
  for (int i = 0; i < copies; ++i)
    for (int j = i + 1; j < copies; ++j) {
      Matrix diff = adjacency_difference(runs[i], runs[j]);
      double d = cut_norm_heuristic(diff, opt.distance_restarts, stream.bits(1000 + i * copies + j)).value;
      dist[static_cast<size_t>(i) * copies + j] = d;
      dist[static_cast<size_t>(j) * copies + i] = d;
    }

  SparseSynthResult res;
  res.rounds = opt.rounds;
  res.delta_hat = threshold;
  res.candidates = copies;
  res.graph = WeightedGraph(n);
  res.empty_fallback = true;
  for (int i = 0; i < copies; ++i) {
    int close = 0;
    for (int j = 0; j < copies; ++j)
      if (dist[static_cast<size_t>(i) * copies + j] <= 2.0 * threshold) close++;
    if (close * 2 > copies) {
      res.graph = runs[i];
      res.chosen_index = i;
      res.empty_fallback = false;
      break;
    }
  }
  return res;
}

std::string mw_trace_to_jsonl(const std::vector<MwRoundTrace>& trace, PrivacyBudget per_round) {
  std::string out;
  char buf[256];
  for (const auto& row : trace) {
    std::snprintf(buf, sizeof(buf),
                  "{\"round\":%d,\"witness_rows\":%d,\"witness_cols\":%d,\"measured\":%.17g,"
                  "\"noisy\":%.17g,\"epsilon_spent\":%.17g,\"delta_spent\":%.17g}\n",
                  row.round, row.witness_rows, row.witness_cols, row.measured, row.noisy,
                  per_round.epsilon * (row.round + 1), per_round.delta * (row.round + 1));
    out += buf;
  }
  return out;
}

SparseSynthResult boosted_sparse_synth(const WeightedGraph& g, const BoostOptions& opt,
                                       const SparseSynthOptions& base_opt, BudgetLedger* ledger) {
  SparseSynthOptions tmpl = base_opt;
  BoostOptions bopt = opt;
  bopt.rounds = tmpl.rounds;
  BaseMechanism base = [&tmpl](const WeightedGraph& input, PrivacyBudget budget, uint64_t seed) {
    SparseSynthOptions o = tmpl;
    o.budget = budget;
    o.seed = seed;
    return sparse_synth_base(input, o);
  };
  return boost_median(base, g, bopt, ledger);
}

}  // namespace dpcut
