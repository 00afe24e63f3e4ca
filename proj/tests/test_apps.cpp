#include <doctest.h>

#include <cmath>

#include "dpcut/apps.hpp"
#include "oracles.hpp"

using namespace dpcut;

namespace {

WeightedGraph complete_bipartite_8_8() {
  WeightedGraph g(16);
  for (int u = 0; u < 8; ++u)
    for (int v = 8; v < 16; ++v) g.set_edge(u, v, 1.0);
  return g;
}

AppOptions noiseless_opts(CutSolver solver) {
  AppOptions opt;
  opt.budget = PrivacyBudget(0.4, 1e-6);
  opt.solver = solver;
  opt.noiseless = true;
  return opt;
}

WeightedGraph triangle() {
  WeightedGraph g(3);
  g.set_edge(0, 1, 1.0);
  g.set_edge(1, 2, 1.0);
  g.set_edge(0, 2, 1.0);
  return g;
}

}  // namespace

TEST_CASE("noiseless exhaustive optima on named instances") {
  CutSolution kbb = private_max_cut(complete_bipartite_8_8(), noiseless_opts(CutSolver::exhaustive));
  CHECK(kbb.objective_on_synth == doctest::Approx(64.0));

  CutSolution tri = private_max_cut(triangle(), noiseless_opts(CutSolver::exhaustive));
  CHECK(tri.objective_on_synth == doctest::Approx(2.0));

  // Balanced bipartition of K8,8 still cuts everything.
  CutSolution bis = private_max_bisection(complete_bipartite_8_8(), noiseless_opts(CutSolver::exhaustive));
  CHECK(bis.objective_on_synth == doctest::Approx(64.0));
  CHECK(bis.partition[0].size() == 8);

  // P4: the best balanced cut takes {v0, v2}.
  WeightedGraph p4(4);
  p4.set_edge(0, 1, 1.0);
  p4.set_edge(1, 2, 1.0);
  p4.set_edge(2, 3, 1.0);
  CutSolution pbis = private_max_bisection(p4, noiseless_opts(CutSolver::exhaustive));
  CHECK(pbis.objective_on_synth == doctest::Approx(3.0));
  CHECK(pbis.partition[0] == std::vector<int>{0, 2});

  // K4 with k = 3: one pair stays uncut.
  AppOptions k3 = noiseless_opts(CutSolver::exhaustive);
  k3.k = 3;
  CutSolution kcut = private_max_k_cut(gen_complete(4, 1.0), k3);
  CHECK(kcut.objective_on_synth == doctest::Approx(5.0));

  AppOptions k2 = noiseless_opts(CutSolver::exhaustive);
  k2.k = 2;
  CHECK(private_max_k_cut(triangle(), k2).objective_on_synth == doctest::Approx(2.0));

  // k = n cuts every edge.
  AppOptions kn = noiseless_opts(CutSolver::local_search);
  kn.k = 6;
  WeightedGraph g6 = oracles::random_graph(6, 0.7, 5);
  CHECK(private_max_k_cut(g6, kn).objective_on_synth == doctest::Approx(g6.total_weight()));

  // Two K8's and a bridge: the min bisection is the bridge.
  WeightedGraph bridged = gen_planted_two_expanders(16, 1.0, 1.0);
  CutSolution mb = private_min_bisection(bridged, noiseless_opts(CutSolver::exhaustive));
  CHECK(mb.objective_on_synth == doctest::Approx(1.0));

  CutSolution k16 = private_min_bisection(gen_complete(16, 1.0), noiseless_opts(CutSolver::exhaustive));
  CHECK(k16.objective_on_synth == doctest::Approx(64.0));

  CutSolution empty = private_min_bisection(WeightedGraph(8), noiseless_opts(CutSolver::exhaustive));
  CHECK(empty.objective_on_synth == 0.0);
}

TEST_CASE("odd inputs are padded with an isolated node") {
  WeightedGraph p5(5);
  for (int v = 0; v + 1 < 5; ++v) p5.set_edge(v, v + 1, 1.0);
  CutSolution sol = private_max_bisection(p5, noiseless_opts(CutSolver::exhaustive));
  CHECK(sol.padded);
  CHECK(sol.partition[0].size() == 3);
  evaluate_on_input(p5, sol);
  CHECK(sol.objective_on_input == doctest::Approx(sol.objective_on_synth));

  // Padding leaves objectives unchanged: compare against the 6-node padded graph.
  WeightedGraph padded(6);
  for (int v = 0; v + 1 < 5; ++v) padded.set_edge(v, v + 1, 1.0);
  CutSolution direct = private_max_bisection(padded, noiseless_opts(CutSolver::exhaustive));
  CHECK(direct.objective_on_synth == doctest::Approx(sol.objective_on_synth));
}

TEST_CASE("solver sandwich: heuristics never beat exhaustive optima") {
  for (uint64_t seed = 0; seed < 12; ++seed) {
    WeightedGraph g = oracles::random_graph(10, 0.5, 8800 + seed);
    double exh_max = cut_weight(g, max_cut_exhaustive(g));
    double ls_max = cut_weight(g, max_cut_local_search(g, seed));
    CHECK(ls_max <= exh_max + 1e-9);
    CHECK(ls_max >= 0.5 * g.total_weight() - 1e-9);  // local optimum guarantee

    double exh_bis = cut_weight(g, max_bisection_exhaustive(g));
    CHECK(cut_weight(g, max_bisection_local_search(g, seed)) <= exh_bis + 1e-9);

    double exh_min = cut_weight(g, min_bisection_exhaustive(g));
    CHECK(cut_weight(g, min_bisection_local_search(g, seed)) >= exh_min - 1e-9);

    double exh_k = k_cut_objective(g, max_k_cut_exhaustive(g, 3));
    CHECK(k_cut_objective(g, max_k_cut_local_search(g, 3, seed)) <= exh_k + 1e-9);
  }
}

TEST_CASE("solvers are post-processing of the synthetic graph") {
  WeightedGraph g = oracles::random_graph(12, 0.5, 31);
  AppOptions opt;
  opt.budget = PrivacyBudget(0.4, 1e-6);
  opt.solver = CutSolver::exhaustive;
  opt.seed = 7;
  opt.pipeline.mw_rounds = 5;
  opt.pipeline.boost_copies = 3;
  CutSolution a = private_max_cut(g, opt);
  CutSolution b = private_max_cut(g, opt);
  CHECK(a.partition == b.partition);
  CHECK(std::isnan(a.objective_on_input));  // not filled until evaluation
  evaluate_on_input(g, a);
  CHECK(a.objective_on_input == doctest::Approx(cut_weight(g, a.partition[0])));
  CHECK(a.budget_charged.epsilon == doctest::Approx(0.4));
}

TEST_CASE("private max-cut tracks the non-private baseline under noise") {
  WeightedGraph g = gen_gnp(24, 0.5, 1.0, 77);
  AppOptions opt;
  opt.budget = PrivacyBudget(0.45, 1e-6);
  opt.eta = 0.1;
  opt.pipeline.mw_rounds = 8;
  opt.pipeline.boost_copies = 3;
  int ok = 0;
  const int runs = 10;
  for (int r = 0; r < runs; ++r) {
    opt.seed = r;
    CutSolution sol = private_max_cut(g, opt);
    evaluate_on_input(g, sol);
    double baseline = cut_weight(g, max_cut_local_search(g, 1000 + r));
    double slack = delta_budget(24, opt.budget, opt.eta / 100.0);
    if (sol.objective_on_input >= baseline - slack) ok++;
  }
  CHECK(ok >= 8);
}

TEST_CASE("input validation") {
  WeightedGraph g = oracles::random_graph(6, 0.5, 1);
  AppOptions opt = noiseless_opts(CutSolver::exhaustive);
  opt.k = 9;
  CHECK_THROWS_AS(private_max_k_cut(g, opt), std::invalid_argument);
  AppOptions bad_eta = noiseless_opts(CutSolver::exhaustive);
  bad_eta.eta = 0.0;
  CHECK_THROWS_AS(private_max_cut(g, bad_eta), std::invalid_argument);
  CHECK_THROWS_AS(max_cut_exhaustive(WeightedGraph(21)), std::invalid_argument);
}

TEST_CASE("private solution equals the solver run directly on the released graph") {
  WeightedGraph g = oracles::random_graph(12, 0.5, 91);
  AppOptions opt;
  opt.budget = PrivacyBudget(0.4, 1e-6);
  opt.solver = CutSolver::exhaustive;
  opt.seed = 3;
  opt.pipeline.mw_rounds = 4;
  opt.pipeline.boost_copies = 2;
  CutSolution sol = private_max_cut(g, opt);

  PipelineOptions popt = opt.pipeline;
  popt.budget = opt.budget;
  popt.alpha = opt.eta / 100.0;
  popt.seed = opt.seed;
  popt.noiseless = opt.noiseless;
  SynthReport rep = dp_cut_synth(g, popt);
  std::vector<int> direct = max_cut_exhaustive(rep.graph);
  std::vector<char> in(12, 0);
  for (int v : direct) in[v] = 1;
  std::vector<std::vector<int>> expected(2);
  for (int v = 0; v < 12; ++v) expected[in[v] ? 0 : 1].push_back(v);
  CHECK(sol.partition == expected);
  CHECK(sol.objective_on_synth == doctest::Approx(cut_weight(rep.graph, direct)));
}
