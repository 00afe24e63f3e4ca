#include "dpcut/cut_norm.hpp"

#include <cmath>
#include <stdexcept>

#include "dpcut/rng.hpp"

namespace dpcut {

Matrix adjacency_matrix(const WeightedGraph& g) {
  Matrix m(g.vertex_count());
  for (const auto& [uv, w] : g.edges()) {
    m.at(uv.first, uv.second) = w;
    m.at(uv.second, uv.first) = w;
  }
  return m;
}

Matrix adjacency_difference(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.vertex_count() != b.vertex_count()) throw std::invalid_argument("vertex sets differ");
  Matrix m = adjacency_matrix(a);
  for (const auto& [uv, w] : b.edges()) {
    m.at(uv.first, uv.second) -= w;
    m.at(uv.second, uv.first) -= w;
  }
  return m;
}

double rectangle_sum(const Matrix& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  double s = 0.0;
  for (int i : rows)
    for (int j : cols) s += a.at(i, j);
  return s;
}

namespace {

std::vector<int> mask_to_ids(uint32_t mask, int n) {
  std::vector<int> ids;
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1u) ids.push_back(i);
  return ids;
}

}  // namespace

CutNormEstimate cut_norm_exact(const Matrix& a) {
  int n = a.n;
  if (n > 16) throw std::invalid_argument("cut_norm_exact supports n <= 16; use cut_norm_heuristic");
  CutNormEstimate best;
  best.exact = true;
  if (n == 0) return best;

  std::vector<double> colsum(n);
  for (uint32_t rows = 0; rows < (1u << n); ++rows) {
    for (int j = 0; j < n; ++j) colsum[j] = 0.0;
    for (int i = 0; i < n; ++i)
      if ((rows >> i) & 1u)
        for (int j = 0; j < n; ++j) colsum[j] += a.at(i, j);
    double pos = 0.0, neg = 0.0;
    for (int j = 0; j < n; ++j) {
      if (colsum[j] > 0.0) pos += colsum[j];
      if (colsum[j] < 0.0) neg -= colsum[j];
    }
    double v = std::max(pos, neg);
    if (v > best.value) {
      best.value = v;
      best.rows = mask_to_ids(rows, n);
      best.cols.clear();
      bool positive = pos >= neg;
      for (int j = 0; j < n; ++j)
        if (positive ? colsum[j] > 0.0 : colsum[j] < 0.0) best.cols.push_back(j);
    }
  }
  return best;
}

namespace {

// One alternating-maximization pass for a fixed sign (+1 maximizes the
// rectangle sum, -1 maximizes its negation). Returns the achieved signed
// magnitude along with the witness.
double alternate_fixpoint(const Matrix& a, double sign, std::vector<char>& in_rows, std::vector<char>& in_cols) {
  int n = a.n;
  std::vector<double> sums(n);
  double value = -1.0;
  for (int iter = 0; iter < 4 * n + 8; ++iter) {
    // Optimal columns for the current rows.
    for (int j = 0; j < n; ++j) sums[j] = 0.0;
    for (int i = 0; i < n; ++i)
      if (in_rows[i])
        for (int j = 0; j < n; ++j) sums[j] += a.at(i, j);
    double v = 0.0;
    for (int j = 0; j < n; ++j) {
      in_cols[j] = sign * sums[j] > 0.0;
      if (in_cols[j]) v += sign * sums[j];
    }
    // Optimal rows for the chosen columns.
    for (int i = 0; i < n; ++i) sums[i] = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (in_cols[j]) sums[i] += a.at(i, j);
    double v2 = 0.0;
    for (int i = 0; i < n; ++i) {
      in_rows[i] = sign * sums[i] > 0.0;
      if (in_rows[i]) v2 += sign * sums[i];
    }
    if (v2 <= value) return value;
    value = v2;
  }
  return value;
}

}  // namespace

CutNormEstimate cut_norm_heuristic(const Matrix& a, int restarts, uint64_t seed) {
  int n = a.n;
  CutNormEstimate best;
  best.exact = false;
  if (n == 0) return best;

  NoiseStream stream(seed, "cut_norm_heuristic");
  std::vector<char> rows(n), cols(n);
  uint64_t draw = 0;
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    for (double sign : {1.0, -1.0}) {
      if (r == 0) {
        // Deterministic full-set start; optimal already for sign-constant matrices.
        std::fill(rows.begin(), rows.end(), 1);
      } else {
        for (int i = 0; i < n; ++i) rows[i] = stream.bits(draw++) & 1u;
      }
      double v = alternate_fixpoint(a, sign, rows, cols);
      if (v > best.value) {
        best.value = v;
        best.rows.clear();
        best.cols.clear();
        for (int i = 0; i < n; ++i)
          if (rows[i]) best.rows.push_back(i);
        for (int j = 0; j < n; ++j)
          if (cols[j]) best.cols.push_back(j);
      }
    }
  }
  return best;
}

}  // namespace dpcut
