#pragma once

#include <cstdint>
#include <vector>

#include "dpcut/graph.hpp"

namespace dpcut {

// Dense square matrix, row-major.
struct Matrix {
  int n = 0;
  std::vector<double> a;

  Matrix() = default;
  explicit Matrix(int size) : n(size), a(static_cast<size_t>(size) * size, 0.0) {}
  double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

Matrix adjacency_matrix(const WeightedGraph& g);
Matrix adjacency_difference(const WeightedGraph& a, const WeightedGraph& b);

struct CutNormEstimate {
  double value = 0.0;
  std::vector<int> rows;  // I
  std::vector<int> cols;  // J
  bool exact = false;
};

// Re-evaluate |sum_{i in I, j in J} A_ij| for a witness.
double rectangle_sum(const Matrix& a, const std::vector<int>& rows, const std::vector<int>& cols);

// Exact cut norm max_{I,J} |sum A_ij| by row-subset enumeration; for fixed I
// the optimal J keeps columns whose partial sums share a sign, so 2^n row
// subsets suffice. Refuses n > 16.
CutNormEstimate cut_norm_exact(const Matrix& a);

// Alternating local search with random restarts. The returned witness is a
// certified lower bound on the cut norm.
CutNormEstimate cut_norm_heuristic(const Matrix& a, int restarts, uint64_t seed);

}  // namespace dpcut
