#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dpcut {

/// Undirected weighted graph on vertices 0..n-1. Absent pairs have weight
/// zero; stored weights are strictly positive and self-loops are rejected.
class WeightedGraph {
 public:
  using EdgeMap = std::map<std::pair<int, int>, double>;

  WeightedGraph() : n_(0) {}
  explicit WeightedGraph(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
  }

  int vertex_count() const { return n_; }
  size_t edge_count() const { return edges_.size(); }

  // Setting a weight of zero removes the pair.
  void set_edge(int u, int v, double w);
  void add_edge(int u, int v, double w) { set_edge(u, v, edge(u, v) + w); }

  double edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return 0.0;
    auto it = edges_.find(ordered(u, v));
    return it == edges_.end() ? 0.0 : it->second;
  }

  const EdgeMap& edges() const { return edges_; }

  // Recomputed on every call; the graph never caches totals.
  double total_weight() const {
    double s = 0.0;
    for (const auto& [uv, w] : edges_) s += w;
    return s;
  }

  std::vector<double> weighted_degrees() const;

  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex id out of range: " + std::to_string(v));
  }

  bool operator==(const WeightedGraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  static std::pair<int, int> ordered(int u, int v) { return u < v ? std::make_pair(u, v) : std::make_pair(v, u); }

  int n_;
  EdgeMap edges_;
};

/// A cut (S, V\S) with its weight and, when S is a proper nonempty subset,
/// its sparsity w(S) / min(|S|, n-|S|).
struct Cut {
  std::vector<int> subset;
  double weight = 0.0;
  double sparsity = 0.0;
};

double cut_weight(const WeightedGraph& g, const std::vector<int>& subset);
double cut_weight_mask(const WeightedGraph& g, uint64_t mask);  // n <= 64

Cut make_cut(const WeightedGraph& g, const std::vector<int>& subset);

// Exact minimum sparsity over all proper nonempty subsets. Enumeration
// oracle, refuses n > 20.
double graph_sparsity(const WeightedGraph& g);

// True iff the two graphs agree on every pair except at most one, where the
// weights differ by at most 1.
bool is_neighboring(const WeightedGraph& a, const WeightedGraph& b);

struct InducedSubgraph {
  WeightedGraph graph;          // on dense local ids 0..|S|-1
  std::vector<int> global_ids;  // local id -> parent id, sorted ascending
};

InducedSubgraph induced_subgraph(const WeightedGraph& g, const std::vector<int>& vertices);

// ---- Generators (deterministic given seed) ----

WeightedGraph gen_complete(int n, double w);
WeightedGraph gen_star(int n);  // n = leaves + 1 vertices, center 0, unit weights
WeightedGraph gen_gnp(int n, double p, double w, uint64_t seed);
// Two cliques of n/2 vertices with weight inner_w, joined by one bridge edge
// of weight bridge_w between vertices 0 and n/2.
WeightedGraph gen_planted_two_expanders(int n, double inner_w, double bridge_w);
WeightedGraph gen_d_regular_random(int n, int d, uint64_t seed);

// Parse a generator spec string like "gnp:n=16,p=0.3,w=1" (kinds: gnp,
// complete, star, planted, dreg). Used by the CLI.
WeightedGraph generate_from_spec(const std::string& spec, uint64_t seed);

// ---- Edge-list serialization ----
// First line: n. Then "u v w" per edge. '#' starts a comment, blank lines
// are ignored.

WeightedGraph load_edge_list(const std::string& path);
void save_edge_list(const WeightedGraph& g, const std::string& path);
WeightedGraph parse_edge_list(const std::string& text);
std::string format_edge_list(const WeightedGraph& g);

}  // namespace dpcut
