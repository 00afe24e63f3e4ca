#include <doctest.h>

#include <cmath>

#include "dpcut/dense.hpp"
#include "dpcut/expander.hpp"
#include "oracles.hpp"

using namespace dpcut;

namespace {

// Brute-force reference: the largest qualifying subset; ties resolve to the
// set lacking the lowest differing vertex.
std::vector<int> brute_most_balanced(const WeightedGraph& g, double psi) {
  int n = g.vertex_count();
  uint64_t best_mask = 0;
  int best_size = 0;
  for (uint64_t mask = 1; mask < (1ull << n); ++mask) {
    int size = std::popcount(mask);
    if (2 * size > n || size < best_size) continue;
    if (cut_weight_mask(g, mask) > psi * size) continue;
    bool tie_wins = size == best_size && best_mask != 0 &&
                    (((best_mask ^ mask) & -(best_mask ^ mask)) & mask) == 0;
    if (size > best_size || tie_wins) {
      best_size = size;
      best_mask = mask;
    }
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if ((best_mask >> v) & 1u) out.push_back(v);
  return out;
}

WeightedGraph two_triangles() {
  WeightedGraph g(6);
  for (int b : {0, 3})
    for (int u = 0; u < 3; ++u)
      for (int v = u + 1; v < 3; ++v) g.set_edge(b + u, b + v, 1.0);
  return g;
}

}  // namespace

TEST_CASE("exact most-balanced sparse cut on the named graphs") {
  CHECK(most_balanced_sparse_cut(gen_complete(4, 1.0), 1.0).subset.empty());

  // {center, leaf} ties the leaf pairs at w = 3 = psi * 2; the membership
  // tie-break picks the pair of leaves furthest from vertex 0.
  SparseCutResult star = most_balanced_sparse_cut(gen_star(5), 1.5);
  CHECK(star.subset.size() == 2);
  CHECK(star.subset == std::vector<int>{3, 4});
  CHECK(cut_weight(gen_star(5), star.subset) == doctest::Approx(2.0));
  CHECK(star.certified);

  SparseCutResult tri = most_balanced_sparse_cut(two_triangles(), 0.5);
  CHECK(tri.subset == std::vector<int>{3, 4, 5});

  CHECK_THROWS_AS(most_balanced_sparse_cut(gen_star(5), 0.0), std::invalid_argument);
}

TEST_CASE("exact oracle agrees with an independent brute force") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    WeightedGraph g = oracles::random_graph(9, 0.45, 7000 + seed);
    for (double psi : {0.3, 0.8, 1.6}) {
      SparseCutResult r = most_balanced_sparse_cut(g, psi);
      CHECK(r.subset == brute_most_balanced(g, psi));
      if (!r.subset.empty())
        CHECK(cut_weight(g, r.subset) <= psi * r.subset.size() + 1e-12);
    }
  }
}

TEST_CASE("heuristic sweep finds planted sparse cuts above the exact cap") {
  WeightedGraph g = gen_planted_two_expanders(32, 1.0, 1.0);
  SparseCutResult r = most_balanced_sparse_cut(g, 0.5);
  CHECK_FALSE(r.certified);
  CHECK(r.subset.size() == 16);
  CHECK(cut_weight(g, r.subset) == doctest::Approx(1.0));

  // Disconnected: the largest zero-weight balanced component union.
  WeightedGraph parts(24);
  auto add_clique = [&parts](int base, int size) {
    for (int u = 0; u < size; ++u)
      for (int v = u + 1; v < size; ++v) parts.set_edge(base + u, base + v, 1.0);
  };
  add_clique(0, 12);
  add_clique(12, 7);
  add_clique(19, 5);
  SparseCutResult comp = most_balanced_sparse_cut(parts, 0.25);
  CHECK(comp.subset.size() == 12);  // n/2 reachable as a whole-component union
  CHECK(cut_weight(parts, comp.subset) == 0.0);
}

TEST_CASE("psi floor formula and scalings") {
  PrivacyBudget b(1.0, 1e-5);
  double floor16 = psi_floor(16, b, 1e-10, 1.0);
  CHECK(floor16 == doctest::Approx(10.0 * dense_error_bound(16, 1.0, b, 1e-10)));
  CHECK(psi_floor(16, PrivacyBudget(0.5, 1e-5), 1e-10, 1.0) == doctest::Approx(2.0 * floor16));
  CHECK(psi_floor(16, b, 1e-12, 1.0) > floor16);
  CHECK(psi_floor(16, b, 1e-10, 4.0) == doctest::Approx(4.0 * floor16));
}

TEST_CASE("dp sparse cut: noiseless reduces to the exact oracle, planted cut is found under noise") {
  WeightedGraph g = gen_planted_two_expanders(16, 50.0, 1.0);

  DpSparseCutOptions opt;
  opt.budget = PrivacyBudget(1.0, 1e-6);
  opt.noiseless = true;
  SparseCutResult noiseless = dp_most_balanced_sparse_cut(g, 5.0, opt);
  CHECK(noiseless.subset == std::vector<int>{8, 9, 10, 11, 12, 13, 14, 15});

  // Small noise: a large budget keeps sigma well under the bridge weight.
  DpSparseCutOptions noisy;
  noisy.budget = PrivacyBudget(2e4, 1e-6);
  noisy.lambda = 1e-10;
  int hits = 0;
  const int runs = 100;
  for (int r = 0; r < runs; ++r) {
    noisy.seed = r;
    SparseCutResult res = dp_most_balanced_sparse_cut(g, 5.0, noisy);
    if (res.subset.size() == 8 && cut_weight(g, res.subset) <= 5.0 * 8.0) hits++;
  }
  CHECK(hits == runs);

  // Below-floor psi is refused with the floor in the message.
  DpSparseCutOptions strict;
  strict.budget = PrivacyBudget(1.0, 1e-6);
  CHECK_THROWS_WITH_AS(dp_most_balanced_sparse_cut(g, 5.0, strict), doctest::Contains("below floor"),
                       std::invalid_argument);
}

TEST_CASE("schedule parameters") {
  // c_exp = 16 at n = 256: sigma = sqrt(ln 16 / ln 256) with no floor.
  ScheduleParams sp = build_schedule(256, 1.0, PrivacyBudget(1.0, 1e-6), 16.0, 2.0);
  CHECK(sp.sigma_exp == doctest::Approx(std::sqrt(std::log(16.0) / std::log(256.0))));
  CHECK(sp.sigma_exp == doctest::Approx(0.7071).epsilon(1e-3));
  CHECK(sp.s_bar[0] == doctest::Approx(129.0));

  // The sigma floor keeps n^sigma >= e when c_exp is tiny.
  ScheduleParams guarded = build_schedule(64, 1.0, PrivacyBudget(1.0, 1e-6), 1.0, 1.0);
  CHECK(guarded.sigma_exp == doctest::Approx(1.0 / std::sqrt(std::log(64.0))));
  CHECK(std::exp(guarded.sigma_exp * std::log(64.0)) >= std::exp(1.0) - 1e-9);

  // psi_L = psi * c_exp; monotone decreasing levels; s_bar strictly decreasing.
  ScheduleParams sched = build_schedule(16, 3.0, PrivacyBudget(1.0, 1e-6));
  CHECK(sched.psi_levels.back() == doctest::Approx(3.0 * sched.c_exp));
  for (int i = 1; i < sched.levels; ++i) {
    CHECK(sched.psi_levels[i] < sched.psi_levels[i - 1]);
    CHECK(sched.s_bar[i] < sched.s_bar[i - 1]);
  }
  CHECK(sched.s_bar.back() <= 1.0);
  CHECK(sched.per_call.epsilon == doctest::Approx(1.0 / sched.denominator));
  CHECK(sched.lambda == doctest::Approx(std::pow(16.0, -10.0)));
}

TEST_CASE("decomposition: singleton, planted halves, expander stays whole") {
  DecomposeOptions opt;
  opt.budget = PrivacyBudget(4e4, 1e-6);
  opt.seed = 1;

  Decomposition single = expander_decompose(WeightedGraph(1), 5.0, opt);
  CHECK(single.parts == std::vector<std::vector<int>>{{0}});

  WeightedGraph planted = gen_planted_two_expanders(16, 50.0, 1.0);
  int exact_halves = 0;
  const int runs = 30;
  for (int r = 0; r < runs; ++r) {
    opt.seed = r;
    Decomposition d = expander_decompose(planted, 8.0, opt);
    CHECK(d.max_depth <= d.schedule.denominator);
    if (d.parts.size() == 2 && d.parts[0].size() == 8 && d.inter_weight == doctest::Approx(1.0))
      exact_halves++;
    // Partition validity & accounting on every run.
    std::vector<char> seen(16, 0);
    double intra = 0.0;
    for (const auto& part : d.parts) {
      for (int v : part) {
        CHECK_FALSE(seen[v]);
        seen[v] = 1;
      }
      intra += induced_subgraph(planted, part).graph.total_weight();
    }
    for (char s : seen) CHECK(s);
    CHECK(d.inter_weight + intra == doctest::Approx(planted.total_weight()).epsilon(1e-9));
    CHECK(d.ledger.total().epsilon == doctest::Approx(4e4));
    CHECK(d.worst_path_total.epsilon <= 4e4 + 1e-9);
  }
  CHECK(exact_halves >= runs * 9 / 10);

  // K16 with psi below its sparsity: a single part, nothing cut.
  WeightedGraph k16 = gen_complete(16, 100.0);
  opt.seed = 3;
  Decomposition whole = expander_decompose(k16, 8.0, opt);
  CHECK(whole.parts.size() == 1);
  CHECK(whole.inter_weight == doctest::Approx(0.0));
}

TEST_CASE("decomposition respects the floor unless disabled") {
  WeightedGraph g = gen_planted_two_expanders(16, 50.0, 1.0);
  DecomposeOptions strict;
  strict.budget = PrivacyBudget(1.0, 1e-6);
  CHECK_THROWS_WITH_AS(expander_decompose(g, 8.0, strict), doctest::Contains("below decomposition floor"),
                       std::invalid_argument);
  DecomposeOptions relaxed = strict;
  relaxed.enforce_floor = false;
  Decomposition d = expander_decompose(g, 8.0, relaxed);
  CHECK(!d.parts.empty());
}

TEST_CASE("noiseless decomposition splits disconnected graphs into components") {
  WeightedGraph g = two_triangles();
  DecomposeOptions opt;
  opt.budget = PrivacyBudget(1.0, 1e-6);
  opt.noiseless = true;
  Decomposition d = expander_decompose(g, 1e-9, opt);
  CHECK(d.parts.size() == 2);
  CHECK(d.inter_weight == doctest::Approx(0.0));
}
