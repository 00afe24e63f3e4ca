#include "dpcut/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "dpcut/apps.hpp"
#include "dpcut/dense.hpp"
#include "dpcut/expander.hpp"
#include "dpcut/pipeline.hpp"
#include "dpcut/rng.hpp"
#include "dpcut/sparse.hpp"

namespace dpcut {

using nlohmann::ordered_json;

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  ExperimentConfig c;
  auto get = [&j](const char* key, auto fallback) {
    using T = decltype(fallback);
    return j.contains(key) ? j.at(key).get<T>() : fallback;
  };
  c.input_path = get("input", std::string());
  c.generator = get("generator", std::string());
  c.generator_seed = get("generator_seed", static_cast<uint64_t>(1));
  c.mechanism = get("mechanism", std::string());
  c.epsilon = get("epsilon", 1.0);
  c.delta = get("delta", 1e-6);
  c.alpha = get("alpha", 0.25);
  c.gamma = get("gamma", 0.3);
  c.eta = get("eta", 0.1);
  c.k = get("k", 2);
  c.psi = get("psi", 0.0);
  if (j.contains("seeds")) {
    c.seeds = j.at("seeds").get<std::vector<uint64_t>>();
  } else if (const char* env = std::getenv("DPCUT_SEED")) {
    c.seeds = {static_cast<uint64_t>(std::strtoull(env, nullptr, 10))};
  }
  c.cut_sample_count = get("cut_sample_count", 1000);
  c.cut_seed = get("cut_seed", static_cast<uint64_t>(12345));
  if (j.contains("sweep_n")) c.sweep_n = j.at("sweep_n").get<std::vector<int>>();
  if (j.contains("sweep_epsilon")) c.sweep_epsilon = j.at("sweep_epsilon").get<std::vector<double>>();
  c.mw_trace = get("mw_trace", false);
  c.bound_constant = get("bound_constant", 4.0);
  c.c_prime = get("c_prime", 1.0);
  c.c_delta = get("c_delta", 1.0);
  c.c_s = get("c_s", 1.0);
  c.psi_boost = get("psi_boost", 0.0);
  c.lambda = get("lambda", 0.0);
  c.mw_rounds = get("mw_rounds", 20);
  c.boost_copies = get("boost_copies", 0);
  c.witness_restarts = get("witness_restarts", 8);
  c.distance_restarts = get("distance_restarts", 6);
  c.sweep_restarts = get("sweep_restarts", 8);
  c.solver = get("solver", std::string("local_search"));
  c.noiseless = get("noiseless", false);
  c.output_dir = get("output_dir", std::string("."));
  c.label = get("label", std::string("experiment"));

  if (c.mechanism.empty()) throw std::invalid_argument("config: 'mechanism' is required");
  if (c.input_path.empty() == c.generator.empty())
    throw std::invalid_argument("config: exactly one of 'input' or 'generator' is required");
  if (c.seeds.empty()) throw std::invalid_argument("config: 'seeds' must be non-empty");
  if (!c.sweep_n.empty() && !c.sweep_epsilon.empty())
    throw std::invalid_argument("config: sweep_n and sweep_epsilon are mutually exclusive");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_json(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  ordered_json j;
  if (!c.input_path.empty()) j["input"] = c.input_path;
  if (!c.generator.empty()) j["generator"] = c.generator;
  j["generator_seed"] = c.generator_seed;
  j["mechanism"] = c.mechanism;
  j["epsilon"] = c.epsilon;
  j["delta"] = c.delta;
  j["alpha"] = c.alpha;
  j["gamma"] = c.gamma;
  j["eta"] = c.eta;
  j["k"] = c.k;
  j["psi"] = c.psi;
  j["seeds"] = c.seeds;
  j["cut_sample_count"] = c.cut_sample_count;
  j["cut_seed"] = c.cut_seed;
  if (!c.sweep_n.empty()) j["sweep_n"] = c.sweep_n;
  if (!c.sweep_epsilon.empty()) j["sweep_epsilon"] = c.sweep_epsilon;
  j["mw_trace"] = c.mw_trace;
  j["bound_constant"] = c.bound_constant;
  j["c_prime"] = c.c_prime;
  j["c_delta"] = c.c_delta;
  j["c_s"] = c.c_s;
  j["psi_boost"] = c.psi_boost;
  j["lambda"] = c.lambda;
  j["mw_rounds"] = c.mw_rounds;
  j["boost_copies"] = c.boost_copies;
  j["witness_restarts"] = c.witness_restarts;
  j["distance_restarts"] = c.distance_restarts;
  j["sweep_restarts"] = c.sweep_restarts;
  j["solver"] = c.solver;
  j["noiseless"] = c.noiseless;
  j["output_dir"] = c.output_dir;
  j["label"] = c.label;
  return j.dump(2);
}

std::vector<std::vector<int>> evaluation_cuts(const WeightedGraph& g, int sample_count, uint64_t cut_seed) {
  int n = g.vertex_count();
  std::vector<std::vector<int>> cuts;
  if (n < 2) return cuts;
  if (n <= 16) {
    // All proper cuts once each: the side not containing vertex n-1.
    for (uint64_t mask = 1; mask < (1ull << (n - 1)); ++mask) {
      std::vector<int> s;
      for (int v = 0; v < n - 1; ++v)
        if ((mask >> v) & 1u) s.push_back(v);
      cuts.push_back(std::move(s));
    }
    return cuts;
  }
  NoiseStream stream(cut_seed, "evaluation_cuts");
  uint64_t draw = 0;
  for (int i = 0; i < sample_count; ++i) {
    std::vector<int> s;
    do {
      s.clear();
      for (int v = 0; v < n; ++v)
        if (stream.bits(draw++) & 1u) s.push_back(v);
    } while (s.empty() || static_cast<int>(s.size()) == n);
    cuts.push_back(std::move(s));
  }
  for (int v = 0; v < n; ++v) cuts.push_back({v});
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> deg = g.weighted_degrees();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (deg[a] != deg[b]) return deg[a] > deg[b];
    return a < b;
  });
  std::vector<int> prefix;
  for (int i = 0; i < n - 1; ++i) {
    prefix.push_back(order[i]);
    cuts.push_back(prefix);
  }
  return cuts;
}

namespace {

struct FlatEdge {
  int u, v;
  double w;
};

template <typename EdgeContainer>
std::vector<FlatEdge> flatten(const EdgeContainer& edges) {
  std::vector<FlatEdge> out;
  out.reserve(edges.size());
  for (const auto& [uv, w] : edges) out.push_back({uv.first, uv.second, w});
  return out;
}

struct CutErrors {
  double max_abs = 0.0;
  double max_slack = -std::numeric_limits<double>::infinity();
  double mean_abs = 0.0;
};

CutErrors measure_errors(const WeightedGraph& input, const std::vector<FlatEdge>& synth_edges,
                         const std::vector<std::vector<int>>& cuts, double mult_allowance) {
  CutErrors e;
  if (cuts.empty()) {
    e.max_slack = 0.0;
    return e;
  }
  int n = input.vertex_count();
  std::vector<FlatEdge> in_edges = flatten(input.edges());
  std::vector<char> in(n, 0);
  for (const auto& cut : cuts) {
    for (int v : cut) in[v] = 1;
    double w_true = 0.0, w_synth = 0.0;
    for (const auto& fe : in_edges)
      if (in[fe.u] != in[fe.v]) w_true += fe.w;
    for (const auto& fe : synth_edges)
      if (in[fe.u] != in[fe.v]) w_synth += fe.w;
    for (int v : cut) in[v] = 0;
    double diff = std::fabs(w_true - w_synth);
    e.max_abs = std::max(e.max_abs, diff);
    e.max_slack = std::max(e.max_slack, diff - mult_allowance * w_true);
    e.mean_abs += diff;
  }
  e.mean_abs /= static_cast<double>(cuts.size());
  return e;
}

PipelineOptions pipeline_options_from(const ExperimentConfig& c, uint64_t seed) {
  PipelineOptions p;
  p.budget = PrivacyBudget(c.epsilon, c.delta);
  p.alpha = c.alpha;
  p.seed = seed;
  p.noiseless = c.noiseless;
  p.psi_boost = c.psi_boost;
  p.bound_constant = c.bound_constant;
  p.c_prime = c.c_prime;
  p.c_delta = c.c_delta;
  p.mw_rounds = c.mw_rounds;
  p.witness_restarts = c.witness_restarts;
  p.boost_copies = c.boost_copies;
  p.distance_restarts = c.distance_restarts;
  p.sweep_restarts = c.sweep_restarts;
  if (c.psi > 0.0) p.psi_override = c.psi;
  return p;
}

struct RunOutput {
  ReportRow row;
  std::string solution_json;
  std::string trace_jsonl;
};

RunOutput run_one(const ExperimentConfig& c, const WeightedGraph& input, uint64_t seed) {
  RunOutput out_bundle;
  ReportRow& row = out_bundle.row;
  row.mechanism = c.mechanism;
  row.seed = seed;
  row.n = input.vertex_count();
  row.epsilon = c.epsilon;
  auto cuts = evaluation_cuts(input, c.cut_sample_count, c.cut_seed);
  auto t0 = std::chrono::steady_clock::now();
  int n = input.vertex_count();
  double lambda = c.lambda > 0.0 ? c.lambda : (n >= 2 ? std::pow(static_cast<double>(n), -10.0) : 1e-10);

  if (c.mechanism == "laplace_baseline") {
    SignedGraph out = laplace_baseline(input, c.epsilon, seed, c.noiseless);
    row.negative_weights = out.has_negative;
    row.edge_count = static_cast<long>(out.weights.size());
    row.ledger_epsilon = c.epsilon;
    row.ledger_delta = 0.0;
    auto e = measure_errors(input, flatten(out.weights), cuts, c.alpha);
    row.max_abs_err = e.max_abs;
    row.max_slack = e.max_slack;
    row.mean_abs_err = e.mean_abs;
  } else if (c.mechanism == "dense") {
    DenseSynthOptions opt;
    opt.budget = PrivacyBudget(c.epsilon, c.delta);
    opt.lambda = lambda;
    opt.seed = seed;
    opt.bound_constant = c.bound_constant;
    opt.noiseless = c.noiseless;
    DenseSynthResult out = dense_synth(input, opt);
    row.edge_count = static_cast<long>(out.graph.edge_count());
    row.ledger_epsilon = out.budget_charged.epsilon;
    row.ledger_delta = out.budget_charged.delta;
    auto e = measure_errors(input, flatten(out.graph.edges()), cuts, c.alpha);
    row.max_abs_err = e.max_abs;
    row.max_slack = e.max_slack;
    row.mean_abs_err = e.mean_abs;
    // The clamped-Gaussian substitute's bound is measured, not assumed: count
    // evaluated cuts whose error exceeds the closed-form bound at lambda.
    if (!c.noiseless)
      for (const auto& cut : cuts) {
        int s = std::min(cut.size(), input.vertex_count() - cut.size());
        double err = std::fabs(cut_weight(input, cut) - cut_weight(out.graph, cut));
        if (err > dense_error_bound(n, s, opt.budget, lambda, c.bound_constant)) row.bound_violations++;
      }
  } else if (c.mechanism == "sparse_base") {
    SparseSynthOptions sopt;
    sopt.budget = PrivacyBudget(c.epsilon, c.delta);
    sopt.rounds = c.mw_rounds;
    sopt.seed = seed;
    sopt.noiseless = c.noiseless;
    sopt.witness_restarts = c.witness_restarts;
    BudgetLedger ledger;
    std::vector<MwRoundTrace> trace;
    WeightedGraph out = sparse_synth_base(input, sopt, &ledger, c.mw_trace ? &trace : nullptr);
    if (c.mw_trace)
      out_bundle.trace_jsonl = mw_trace_to_jsonl(
          trace, PrivacyBudget(c.epsilon / (2.0 * c.mw_rounds), c.delta / c.mw_rounds));
    row.edge_count = static_cast<long>(out.edge_count());
    row.ledger_epsilon = ledger.total().epsilon;
    row.ledger_delta = ledger.total().delta;
    auto e = measure_errors(input, flatten(out.edges()), cuts, c.alpha);
    row.max_abs_err = e.max_abs;
    row.max_slack = e.max_slack;
    row.mean_abs_err = e.mean_abs;
  } else if (c.mechanism == "sparse") {
    BoostOptions bopt;
    bopt.budget = PrivacyBudget(c.epsilon, c.delta);
    bopt.copies = c.boost_copies;
    bopt.seed = seed;
    bopt.distance_restarts = c.distance_restarts;
    SparseSynthOptions sopt;
    sopt.rounds = c.mw_rounds;
    sopt.noiseless = c.noiseless;
    sopt.witness_restarts = c.witness_restarts;
    BudgetLedger ledger;
    SparseSynthResult out = boosted_sparse_synth(input, bopt, sopt, &ledger);
    row.edge_count = static_cast<long>(out.graph.edge_count());
    row.ledger_epsilon = ledger.total().epsilon;
    row.ledger_delta = ledger.total().delta;
    auto e = measure_errors(input, flatten(out.graph.edges()), cuts, c.alpha);
    row.max_abs_err = e.max_abs;
    row.max_slack = e.max_slack;
    row.mean_abs_err = e.mean_abs;
  } else if (c.mechanism == "pipeline") {
    DpPipelineResult out = dp_sparse_pipeline(input, pipeline_options_from(c, seed), c.gamma, c.c_s);
    row.edge_count = static_cast<long>(out.output.edge_count);
    row.ledger_epsilon = out.synth.ledger.total().epsilon;
    row.ledger_delta = out.synth.ledger.total().delta;
    row.delta_budgeted = out.synth.delta_budgeted;
    row.parts = static_cast<long>(out.synth.decomposition.parts.size());
    row.inter_weight = out.synth.decomposition.inter_weight;
    auto e = measure_errors(input, flatten(out.output.graph.edges()), cuts, c.gamma);
    row.max_abs_err = e.max_abs;
    row.max_slack = e.max_slack;
    row.mean_abs_err = e.mean_abs;
  } else if (c.mechanism == "decompose") {
    DecomposeOptions opt;
    opt.budget = PrivacyBudget(c.epsilon, c.delta);
    opt.seed = seed;
    opt.noiseless = c.noiseless;
    opt.bound_constant = c.bound_constant;
    opt.restarts = c.sweep_restarts;
    double psi = c.psi;
    if (psi <= 0.0) {
      double boost = c.psi_boost > 0.0 ? c.psi_boost : 8.0 * std::log(std::max(n, 2));
      psi = boost * decomposition_psi_floor(n, opt.budget, c.bound_constant) / c.alpha;
    }
    Decomposition dec = expander_decompose(input, psi, opt);
    row.parts = static_cast<long>(dec.parts.size());
    row.inter_weight = dec.inter_weight;
    row.depth = dec.max_depth;
    row.depth_cap = dec.schedule.denominator;
    row.ledger_epsilon = dec.ledger.total().epsilon;
    row.ledger_delta = dec.ledger.total().delta;
    row.min_part_sparsity = std::numeric_limits<double>::infinity();
    for (const auto& part : dec.parts) {
      if (part.size() < 2 || part.size() > 16) continue;
      row.min_part_sparsity =
          std::min(row.min_part_sparsity, graph_sparsity(induced_subgraph(input, part).graph));
    }
  } else if (c.mechanism.rfind("app:", 0) == 0) {
    AppOptions opt;
    opt.budget = PrivacyBudget(c.epsilon, c.delta);
    opt.eta = c.eta;
    opt.solver = c.solver == "exhaustive" ? CutSolver::exhaustive : CutSolver::local_search;
    opt.seed = seed;
    opt.k = c.k;
    opt.noiseless = c.noiseless;
    opt.pipeline = pipeline_options_from(c, seed);
    CutSolution sol;
    std::string app = c.mechanism.substr(4);
    if (app == "max_cut") {
      sol = private_max_cut(input, opt);
      row.baseline_objective = cut_weight(input, max_cut_local_search(input, mix64(seed ^ 0xb1u)));
    } else if (app == "max_bisection") {
      sol = private_max_bisection(input, opt);
    } else if (app == "max_k_cut") {
      sol = private_max_k_cut(input, opt);
    } else if (app == "min_bisection") {
      sol = private_min_bisection(input, opt);
    } else {
      throw std::invalid_argument("unknown application '" + app + "'");
    }
    evaluate_on_input(input, sol);
    row.objective_synth = sol.objective_on_synth;
    row.objective_input = sol.objective_on_input;
    row.ledger_epsilon = sol.budget_charged.epsilon;
    row.ledger_delta = sol.budget_charged.delta;
    row.delta_budgeted = delta_budget(n, sol.budget_charged, c.eta / 100.0, c.c_delta);
    {
      ordered_json sj;
      sj["mechanism"] = c.mechanism;
      sj["seed"] = seed;
      sj["partition"] = sol.partition;
      sj["objective_on_synth"] = sol.objective_on_synth;
      sj["objective_on_input"] = sol.objective_on_input;
      sj["padded"] = sol.padded;
      sj["budget"] = {{"epsilon", sol.budget_charged.epsilon}, {"delta", sol.budget_charged.delta}};
      out_bundle.solution_json = sj.dump();
    }
  } else {
    throw std::invalid_argument("unknown mechanism '" + c.mechanism + "'");
  }

  row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out_bundle;
}

WeightedGraph input_for(const ExperimentConfig& c, int n_override) {
  if (!c.input_path.empty()) return load_edge_list(c.input_path);
  std::string spec = c.generator;
  if (n_override > 0) {
    std::string token = "{n}";
    auto pos = spec.find(token);
    if (pos == std::string::npos)
      throw std::invalid_argument("sweep requires a '{n}' placeholder in the generator spec");
    spec.replace(pos, token.size(), std::to_string(n_override));
  }
  return generate_from_spec(spec, c.generator_seed);
}

}  // namespace

namespace {

// Least-squares slope of ln(median slack per group) against ln(group key).
bool fit_log_slope(const std::vector<std::pair<double, double>>& points, double& slope) {
  if (points.size() < 2) return false;
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= points.size();
  my /= points.size();
  double num = 0.0, den = 0.0;
  for (const auto& [x, y] : points) {
    num += (x - mx) * (y - my);
    den += (x - mx) * (x - mx);
  }
  if (den == 0.0) return false;
  slope = num / den;
  return true;
}

double median_slack(const std::vector<ReportRow>& rows, auto&& pred) {
  std::vector<double> slacks;
  for (const auto& row : rows)
    if (pred(row)) slacks.push_back(std::max(row.max_slack, 1e-12));
  if (slacks.empty()) return 0.0;
  std::sort(slacks.begin(), slacks.end());
  return slacks[slacks.size() / 2];
}

}  // namespace

ErrorReport run_experiment(const ExperimentConfig& config) {
  if (!config.sweep_n.empty() && !config.sweep_epsilon.empty())
    throw std::invalid_argument("config: sweep_n and sweep_epsilon are mutually exclusive");
  ErrorReport report;
  report.config = config;

  auto run_all_seeds = [&report](const ExperimentConfig& c, const WeightedGraph& input) {
    for (uint64_t seed : c.seeds) {
      RunOutput out = run_one(c, input, seed);
      report.rows.push_back(out.row);
      if (!out.solution_json.empty()) report.solutions.push_back({c.mechanism, seed, out.solution_json});
      if (!out.trace_jsonl.empty())
        report.artifacts.emplace_back(c.label + "_trace_seed" + std::to_string(seed) + ".jsonl",
                                      out.trace_jsonl);
    }
  };

  if (!config.sweep_epsilon.empty()) {
    for (double eps : config.sweep_epsilon) {
      ExperimentConfig c = config;
      c.epsilon = eps;
      run_all_seeds(c, input_for(config, 0));
    }
  } else {
    std::vector<int> sizes = config.sweep_n.empty() ? std::vector<int>{0} : config.sweep_n;
    for (int n : sizes) run_all_seeds(config, input_for(config, n));
  }

  std::sort(report.rows.begin(), report.rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.mechanism != b.mechanism) return a.mechanism < b.mechanism;
    if (a.n != b.n) return a.n < b.n;
    if (a.epsilon != b.epsilon) return a.epsilon < b.epsilon;
    return a.seed < b.seed;
  });

  std::vector<std::pair<double, double>> points;
  if (config.sweep_n.size() >= 2) {
    for (int n : config.sweep_n) {
      double med = median_slack(report.rows, [n](const ReportRow& r) { return r.n == n; });
      if (med > 0.0) points.emplace_back(std::log(n), std::log(med));
    }
  } else if (config.sweep_epsilon.size() >= 2) {
    for (double eps : config.sweep_epsilon) {
      double med = median_slack(report.rows, [eps](const ReportRow& r) { return r.epsilon == eps; });
      if (med > 0.0) points.emplace_back(std::log(eps), std::log(med));
    }
  }
  double slope = 0.0;
  if (fit_log_slope(points, slope)) {
    report.fitted_exponent = slope;
    report.has_fitted_exponent = true;
  }
  return report;
}

ErrorReport compare_baselines(const ExperimentConfig& config) {
  ErrorReport combined;
  combined.config = config;
  for (const char* mech : {"laplace_baseline", "dense", "pipeline"}) {
    ExperimentConfig c = config;
    c.mechanism = mech;
    ErrorReport r = run_experiment(c);
    combined.rows.insert(combined.rows.end(), r.rows.begin(), r.rows.end());
  }
  std::sort(combined.rows.begin(), combined.rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.mechanism != b.mechanism) return a.mechanism < b.mechanism;
    if (a.n != b.n) return a.n < b.n;
    return a.seed < b.seed;
  });
  return combined;
}

std::string report_to_csv(const ErrorReport& report) {
  std::string out =
      "mechanism,seed,n,epsilon,max_abs_err,max_slack,mean_abs_err,edge_count,negative_weights,"
      "bound_violations,ledger_epsilon,ledger_delta,delta_budgeted,objective_synth,objective_input,"
      "baseline_objective,parts,inter_weight,min_part_sparsity,depth,depth_cap\n";
  for (const auto& r : report.rows) {
    out += r.mechanism;
    out += ',' + std::to_string(r.seed);
    out += ',' + std::to_string(r.n);
    out += ',' + format_double(r.epsilon);
    out += ',' + format_double(r.max_abs_err);
    out += ',' + format_double(r.max_slack);
    out += ',' + format_double(r.mean_abs_err);
    out += ',' + std::to_string(r.edge_count);
    out += r.negative_weights ? ",1" : ",0";
    out += ',' + std::to_string(r.bound_violations);
    out += ',' + format_double(r.ledger_epsilon);
    out += ',' + format_double(r.ledger_delta);
    out += ',' + format_double(r.delta_budgeted);
    out += ',' + format_double(r.objective_synth);
    out += ',' + format_double(r.objective_input);
    out += ',' + format_double(r.baseline_objective);
    out += ',' + std::to_string(r.parts);
    out += ',' + format_double(r.inter_weight);
    out += ',' + format_double(r.min_part_sparsity);
    out += ',' + std::to_string(r.depth);
    out += ',' + format_double(r.depth_cap);
    out += '\n';
  }
  return out;
}

std::string report_to_json(const ErrorReport& report) {
  ordered_json j;
  j["config"] = ordered_json::parse(config_to_json(report.config));
  j["rows"] = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row;
    row["mechanism"] = r.mechanism;
    row["seed"] = r.seed;
    row["n"] = r.n;
    row["epsilon"] = r.epsilon;
    row["max_abs_err"] = r.max_abs_err;
    row["max_slack"] = r.max_slack;
    row["mean_abs_err"] = r.mean_abs_err;
    row["edge_count"] = r.edge_count;
    row["negative_weights"] = r.negative_weights;
    row["bound_violations"] = r.bound_violations;
    row["ledger"] = {{"epsilon", r.ledger_epsilon}, {"delta", r.ledger_delta}};
    row["delta_budgeted"] = r.delta_budgeted;
    row["objective_synth"] = r.objective_synth;
    row["objective_input"] = r.objective_input;
    row["baseline_objective"] = r.baseline_objective;
    row["parts"] = r.parts;
    row["inter_weight"] = r.inter_weight;
    row["min_part_sparsity"] =
        std::isfinite(r.min_part_sparsity) ? ordered_json(r.min_part_sparsity) : ordered_json(nullptr);
    row["depth"] = r.depth;
    row["depth_cap"] = r.depth_cap;
    j["rows"].push_back(row);
  }
  if (report.has_fitted_exponent) j["fitted_exponent"] = report.fitted_exponent;
  return j.dump(2);
}

std::vector<std::string> write_report(const ErrorReport& report) {
  std::filesystem::create_directories(report.config.output_dir);
  std::string stem = report.config.output_dir + "/" + report.config.label;
  std::vector<std::string> paths{stem + ".csv", stem + ".json"};
  std::ofstream csv(paths[0]);
  if (!csv) throw std::runtime_error("cannot write '" + paths[0] + "'");
  csv << report_to_csv(report);
  std::ofstream json(paths[1]);
  if (!json) throw std::runtime_error("cannot write '" + paths[1] + "'");
  json << report_to_json(report);
  if (!report.solutions.empty()) {
    std::string path = stem + "_solutions.jsonl";
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    for (const auto& sol : report.solutions) f << sol.json << '\n';
    paths.push_back(path);
  }
  for (const auto& [name, contents] : report.artifacts) {
    std::string path = report.config.output_dir + "/" + name;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << contents;
    paths.push_back(path);
  }
  return paths;
}

}  // namespace dpcut
