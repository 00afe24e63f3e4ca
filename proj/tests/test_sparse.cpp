#include <doctest.h>

#include <cmath>

#include "dpcut/sparse.hpp"
#include "oracles.hpp"

using namespace dpcut;

namespace {

double max_cut_discrepancy(const WeightedGraph& a, const WeightedGraph& b) {
  int n = a.vertex_count();
  double worst = 0.0;
  for (uint64_t mask = 1; mask + 1 < (1ull << n); ++mask)
    worst = std::max(worst, std::fabs(cut_weight_mask(a, mask) - cut_weight_mask(b, mask)));
  return worst;
}

}  // namespace

TEST_CASE("empty input stays uniform with the noisy total") {
  WeightedGraph empty(6);
  SparseSynthOptions opt;
  opt.budget = PrivacyBudget(1.0, 1e-6);
  opt.rounds = 15;
  opt.seed = 3;
  BudgetLedger ledger;
  WeightedGraph out = sparse_synth_base(empty, opt, &ledger);
  // Total equals the clamped Laplace estimate, spread over all pairs.
  double total = out.total_weight();
  CHECK(total >= 0.0);
  if (total > 0.0) {
    double per_pair = total / 15.0;
    for (int u = 0; u < 6; ++u)
      for (int v = u + 1; v < 6; ++v) CHECK(out.edge(u, v) == doctest::Approx(per_pair).epsilon(1e-9));
  }
  // (eps/2, 0) + rounds * (eps/(2T), delta/T) composes back to (eps, delta).
  CHECK(ledger.total().epsilon == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ledger.total().delta == doctest::Approx(1e-6).epsilon(1e-12));

  CHECK_THROWS_AS(sparse_synth_base(empty, SparseSynthOptions{PrivacyBudget(1.0, 1e-6), 0}),
                  std::invalid_argument);
}

TEST_CASE("noiseless single-edge run converges monotonically") {
  WeightedGraph g(4);
  g.set_edge(0, 1, 1.0);
  SparseSynthOptions opt;
  opt.budget = PrivacyBudget(1.0, 1e-6);
  opt.rounds = 50;
  opt.noiseless = true;
  opt.trace_graphs = true;
  std::vector<MwRoundTrace> trace;
  WeightedGraph out = sparse_synth_base(g, opt, nullptr, &trace);
  REQUIRE(trace.size() == 50);
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& row : trace) {
    double disc = max_cut_discrepancy(g, row.snapshot);
    CHECK(disc <= prev + 1e-12);
    prev = disc;
  }
  CHECK(max_cut_discrepancy(g, out) <= 0.3);
  CHECK(out.total_weight() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("learned synthetic graph tracks cuts within the theory-shaped bound") {
  WeightedGraph g = gen_gnp(12, 0.3, 1.0, 17);
  SparseSynthOptions opt;
  opt.budget = PrivacyBudget(2.0, 1e-5);
  opt.rounds = 100;
  opt.seed = 5;
  WeightedGraph out = sparse_synth_base(g, opt);
  double kappa = max_cut_discrepancy(g, out) / std::sqrt(g.total_weight() * 12.0);
  // Empirical constant recorded by this test; the budget below is generous.
  CHECK(kappa < 6.0);
  MESSAGE("empirical kappa = " << kappa);
}

TEST_CASE("sparse error bound scalings") {
  PrivacyBudget b(1.0, 1e-6);
  double base = sparse_error_bound(25.0, 12, b);
  CHECK(sparse_error_bound(100.0, 12, b) == doctest::Approx(2.0 * base));
  CHECK(sparse_error_bound(0.0, 12, b) == 0.0);
  CHECK(sparse_error_bound(25.0, 12, PrivacyBudget(0.25, 1e-6)) == doctest::Approx(2.0 * base));
  CHECK(sparse_error_bound(25.0, 12, b, 3.0) == doctest::Approx(3.0 * base));
}

TEST_CASE("boost keeps identical copies and rejects a corrupted one") {
  WeightedGraph g = oracles::random_graph(8, 0.5, 2);

  // All copies identical: the first is returned.
  BaseMechanism constant = [&g](const WeightedGraph&, PrivacyBudget, uint64_t) { return g; };
  BoostOptions opt;
  opt.budget = PrivacyBudget(1.0, 1e-6);
  opt.copies = 5;
  BudgetLedger ledger;
  SparseSynthResult res = boost_median(constant, g, opt, &ledger);
  CHECK_FALSE(res.empty_fallback);
  CHECK(res.chosen_index == 0);
  CHECK(res.graph == g);
  CHECK(res.candidates == 5);
  CHECK(ledger.total().epsilon == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ledger.total().delta == doctest::Approx(1e-6).epsilon(1e-12));

  // One adversarial copy far from the rest: a clean copy is returned.
  WeightedGraph corrupted = g;
  for (int v = 1; v < 8; ++v) corrupted.set_edge(0, v, 50.0);
  int call = 0;
  BaseMechanism mostly = [&](const WeightedGraph&, PrivacyBudget, uint64_t) {
    return call++ == 2 ? corrupted : g;
  };
  BoostOptions adv;
  adv.budget = PrivacyBudget(1.0, 1e-6);
  adv.copies = 5;
  adv.delta_threshold = 1.0;
  SparseSynthResult picked = boost_median(mostly, g, adv);
  CHECK_FALSE(picked.empty_fallback);
  CHECK(picked.chosen_index != 2);
  CHECK(picked.graph == g);

  // Zero threshold with distinct copies: flagged empty fallback.
  call = 0;
  BaseMechanism distinct = [&](const WeightedGraph&, PrivacyBudget, uint64_t) {
    WeightedGraph out(8);
    out.set_edge(0, 1 + (call++ % 7), 1.0);
    return out;
  };
  BoostOptions zero;
  zero.budget = PrivacyBudget(1.0, 1e-6);
  zero.copies = 5;
  zero.delta_threshold = 0.0;
  SparseSynthResult fallback = boost_median(distinct, g, zero);
  CHECK(fallback.empty_fallback);
  CHECK(fallback.graph.edge_count() == 0);
}

TEST_CASE("default copy count follows 10 ln n") {
  WeightedGraph g(20);
  int calls = 0;
  BaseMechanism counter = [&](const WeightedGraph&, PrivacyBudget b, uint64_t) {
    calls++;
    CHECK(b.epsilon == doctest::Approx(1.0 / std::ceil(10.0 * std::log(20.0))));
    return WeightedGraph(20);
  };
  BoostOptions opt;
  opt.budget = PrivacyBudget(1.0, 1e-6);
  boost_median(counter, g, opt);
  CHECK(calls == static_cast<int>(std::ceil(10.0 * std::log(20.0))));
}
