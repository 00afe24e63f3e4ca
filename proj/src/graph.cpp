#include "dpcut/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "dpcut/rng.hpp"

namespace dpcut {

void WeightedGraph::set_edge(int u, int v, double w) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("self-loop rejected");
  if (w < 0.0) throw std::invalid_argument("negative edge weight rejected");
  if (!(std::isfinite(w))) throw std::invalid_argument("non-finite edge weight rejected");
  auto key = ordered(u, v);
  if (w == 0.0)
    edges_.erase(key);
  else
    edges_[key] = w;
}

std::vector<double> WeightedGraph::weighted_degrees() const {
  std::vector<double> deg(n_, 0.0);
  for (const auto& [uv, w] : edges_) {
    deg[uv.first] += w;
    deg[uv.second] += w;
  }
  return deg;
}

namespace {

std::vector<char> membership(const WeightedGraph& g, const std::vector<int>& subset) {
  std::vector<char> in(g.vertex_count(), 0);
  for (int v : subset) {
    g.check_vertex(v);
    in[v] = 1;
  }
  return in;
}

}  // namespace

double cut_weight(const WeightedGraph& g, const std::vector<int>& subset) {
  std::vector<char> in = membership(g, subset);
  double s = 0.0;
  for (const auto& [uv, w] : g.edges())
    if (in[uv.first] != in[uv.second]) s += w;
  return s;
}

double cut_weight_mask(const WeightedGraph& g, uint64_t mask) {
  if (g.vertex_count() > 64) throw std::invalid_argument("mask form supports n <= 64");
  double s = 0.0;
  for (const auto& [uv, w] : g.edges())
    if (((mask >> uv.first) & 1u) != ((mask >> uv.second) & 1u)) s += w;
  return s;
}

Cut make_cut(const WeightedGraph& g, const std::vector<int>& subset) {
  int n = g.vertex_count();
  std::vector<char> in = membership(g, subset);
  size_t size = 0;
  for (char c : in) size += c;
  if (size == 0 || size == static_cast<size_t>(n))
    throw std::invalid_argument("sparsity undefined for empty or full subset");
  Cut c;
  c.subset = subset;
  std::sort(c.subset.begin(), c.subset.end());
  c.weight = cut_weight(g, subset);
  c.sparsity = c.weight / static_cast<double>(std::min(size, n - size));
  return c;
}

double graph_sparsity(const WeightedGraph& g) {
  int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("sparsity needs n >= 2");
  if (n > 20) throw std::invalid_argument("too large for exact oracle (n <= 20)");
  // Every proper cut has exactly one side containing vertex 0; enumerate
  // those sides so each cut is visited once.
  double best = std::numeric_limits<double>::infinity();
  uint64_t limit = 1ull << (n - 1);
  for (uint64_t rest = 0; rest < limit; ++rest) {
    uint64_t mask = (rest << 1) | 1u;
    int size = std::popcount(mask);
    if (size == n) continue;
    double w = cut_weight_mask(g, mask);
    double phi = w / static_cast<double>(std::min(size, n - size));
    if (phi < best) best = phi;
  }
  return best;
}

bool is_neighboring(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.vertex_count() != b.vertex_count()) throw std::invalid_argument("vertex sets differ");
  int diffs = 0;
  auto ia = a.edges().begin(), ib = b.edges().begin();
  while (ia != a.edges().end() || ib != b.edges().end()) {
    double wa = 0.0, wb = 0.0;
    if (ib == b.edges().end() || (ia != a.edges().end() && ia->first < ib->first)) {
      wa = ia->second;
      ++ia;
    } else if (ia == a.edges().end() || ib->first < ia->first) {
      wb = ib->second;
      ++ib;
    } else {
      wa = ia->second;
      wb = ib->second;
      ++ia;
      ++ib;
    }
    if (wa == wb) continue;
    if (std::fabs(wa - wb) > 1.0) return false;
    if (++diffs > 1) return false;
  }
  return true;
}

InducedSubgraph induced_subgraph(const WeightedGraph& g, const std::vector<int>& vertices) {
  InducedSubgraph sub;
  sub.global_ids = vertices;
  std::sort(sub.global_ids.begin(), sub.global_ids.end());
  sub.global_ids.erase(std::unique(sub.global_ids.begin(), sub.global_ids.end()), sub.global_ids.end());
  std::vector<int> local(g.vertex_count(), -1);
  for (size_t i = 0; i < sub.global_ids.size(); ++i) {
    g.check_vertex(sub.global_ids[i]);
    local[sub.global_ids[i]] = static_cast<int>(i);
  }
  sub.graph = WeightedGraph(static_cast<int>(sub.global_ids.size()));
  for (const auto& [uv, w] : g.edges()) {
    int lu = local[uv.first], lv = local[uv.second];
    if (lu >= 0 && lv >= 0) sub.graph.set_edge(lu, lv, w);
  }
  return sub;
}

// ---- Generators ----

WeightedGraph gen_complete(int n, double w) {
  if (n < 0 || w < 0.0) throw std::invalid_argument("complete: bad parameters");
  WeightedGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.set_edge(u, v, w);
  return g;
}

WeightedGraph gen_star(int n) {
  if (n < 1) throw std::invalid_argument("star: need at least the center");
  WeightedGraph g(n);
  for (int v = 1; v < n; ++v) g.set_edge(0, v, 1.0);
  return g;
}

WeightedGraph gen_gnp(int n, double p, double w, uint64_t seed) {
  if (n < 0 || p < 0.0 || p > 1.0 || w < 0.0) throw std::invalid_argument("gnp: bad parameters");
  WeightedGraph g(n);
  NoiseStream stream(seed, "gen_gnp");
  uint64_t k = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++k)
      if (stream.uniform(k) < p) g.set_edge(u, v, w);
  return g;
}

WeightedGraph gen_planted_two_expanders(int n, double inner_w, double bridge_w) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("planted: n must be even and >= 4");
  if (inner_w <= 0.0 || bridge_w < 0.0) throw std::invalid_argument("planted: bad weights");
  WeightedGraph g(n);
  int h = n / 2;
  for (int u = 0; u < h; ++u)
    for (int v = u + 1; v < h; ++v) {
      g.set_edge(u, v, inner_w);
      g.set_edge(h + u, h + v, inner_w);
    }
  g.set_edge(0, h, bridge_w);
  return g;
}

WeightedGraph gen_d_regular_random(int n, int d, uint64_t seed) {
  if (n < 1 || d < 0 || d >= n || (n * d) % 2 != 0)
    throw std::invalid_argument("dreg: need 0 <= d < n with n*d even");
  // Pairing model with whole-matching retries on collisions.
  NoiseStream stream(seed, "gen_dreg");
  uint64_t draw = 0;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<size_t>(n) * d);
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    for (size_t i = stubs.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(stream.uniform(draw++) * static_cast<double>(i));
      if (j >= i) j = i - 1;
      std::swap(stubs[i - 1], stubs[j]);
    }
    WeightedGraph g(n);
    bool ok = true;
    for (size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v || g.edge(u, v) != 0.0)
        ok = false;
      else
        g.set_edge(u, v, 1.0);
    }
    if (ok) return g;
  }
  throw std::runtime_error("dreg: failed to realize a simple d-regular graph");
}

namespace {

std::map<std::string, std::string> parse_kv(const std::string& s) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("generator spec: expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

double kv_num(const std::map<std::string, std::string>& kv, const std::string& key, double fallback,
              bool required = false) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    if (required) throw std::invalid_argument("generator spec: missing '" + key + "'");
    return fallback;
  }
  return std::stod(it->second);
}

}  // namespace

WeightedGraph generate_from_spec(const std::string& spec, uint64_t seed) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  auto kv = colon == std::string::npos ? std::map<std::string, std::string>{} : parse_kv(spec.substr(colon + 1));
  if (kind == "gnp")
    return gen_gnp(static_cast<int>(kv_num(kv, "n", 0, true)), kv_num(kv, "p", 0.5), kv_num(kv, "w", 1.0), seed);
  if (kind == "complete") return gen_complete(static_cast<int>(kv_num(kv, "n", 0, true)), kv_num(kv, "w", 1.0));
  if (kind == "star") return gen_star(static_cast<int>(kv_num(kv, "n", 0, true)));
  if (kind == "planted")
    return gen_planted_two_expanders(static_cast<int>(kv_num(kv, "n", 0, true)), kv_num(kv, "inner_w", 1.0),
                                     kv_num(kv, "bridge_w", 1.0));
  if (kind == "dreg")
    return gen_d_regular_random(static_cast<int>(kv_num(kv, "n", 0, true)),
                                static_cast<int>(kv_num(kv, "d", 3)), seed);
  throw std::invalid_argument("unknown generator kind '" + kind + "'");
}

// ---- Edge-list IO ----

WeightedGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("edge list line " + std::to_string(lineno) + ": " + msg);
  };
  bool have_header = false;
  WeightedGraph g;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (!have_header) {
      long long n;
      if (!(ls >> n)) {
        if (ls.eof()) continue;  // blank/comment before header
        fail("expected vertex count");
      }
      std::string extra;
      if (ls >> extra) fail("trailing tokens after vertex count");
      if (n < 0) fail("negative vertex count");
      g = WeightedGraph(static_cast<int>(n));
      have_header = true;
      continue;
    }
    long long u, v;
    double w;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v >> w)) fail("expected 'u v w'");
    std::string extra;
    if (ls >> extra) fail("trailing tokens after edge");
    if (u < 0 || u >= g.vertex_count() || v < 0 || v >= g.vertex_count()) fail("vertex id out of range");
    if (u == v) fail("self-loop");
    if (w < 0.0) fail("negative weight");
    if (g.edge(static_cast<int>(u), static_cast<int>(v)) != 0.0) fail("duplicate edge");
    g.set_edge(static_cast<int>(u), static_cast<int>(v), w);
  }
  if (!have_header) throw std::runtime_error("edge list: missing vertex-count header");
  return g;
}

std::string format_edge_list(const WeightedGraph& g) {
  std::string out = std::to_string(g.vertex_count());
  out += '\n';
  char buf[64];
  for (const auto& [uv, w] : g.edges()) {
    std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", uv.first, uv.second, w);
    out += buf;
  }
  return out;
}

WeightedGraph load_edge_list(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_edge_list(ss.str());
}

void save_edge_list(const WeightedGraph& g, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << format_edge_list(g);
}

}  // namespace dpcut
