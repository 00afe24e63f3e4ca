#include <doctest.h>

#include <cmath>

#include "dpcut/cut_norm.hpp"
#include "oracles.hpp"

using namespace dpcut;

TEST_CASE("exact cut norm on tiny matrices") {
  Matrix one(1);
  one.at(0, 0) = 1.0;
  CutNormEstimate e = cut_norm_exact(one);
  CHECK(e.value == doctest::Approx(1.0));
  CHECK(e.rows == std::vector<int>{0});
  CHECK(e.cols == std::vector<int>{0});
  CHECK(e.exact);

  CHECK(cut_norm_exact(Matrix(3)).value == 0.0);

  Matrix pm(2);
  pm.at(0, 0) = 1.0;
  pm.at(0, 1) = -1.0;
  pm.at(1, 0) = -1.0;
  pm.at(1, 1) = 1.0;
  CHECK(cut_norm_exact(pm).value == doctest::Approx(1.0));

  CHECK_THROWS_AS(cut_norm_exact(Matrix(17)), std::invalid_argument);
}

TEST_CASE("exact cut norm matches full 4^n enumeration") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    int n = 2 + static_cast<int>(seed % 6);
    Matrix m = seed % 2 ? oracles::random_pm1_matrix(n, seed) : oracles::random_gaussian_matrix(n, seed);
    CutNormEstimate e = cut_norm_exact(m);
    CHECK(e.value == doctest::Approx(oracles::cut_norm_4n(m)).epsilon(1e-9));
    // The witness reproduces the claimed value.
    CHECK(std::fabs(rectangle_sum(m, e.rows, e.cols)) == doctest::Approx(e.value).epsilon(1e-12));
  }
}

TEST_CASE("heuristic is a certified lower bound and finds rank-1 mass") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    int n = 3 + static_cast<int>(seed % 8);
    Matrix m = oracles::random_gaussian_matrix(n, 900 + seed);
    CutNormEstimate h = cut_norm_heuristic(m, 8, seed);
    CutNormEstimate e = cut_norm_exact(m);
    CHECK(h.value <= e.value + 1e-9);
    CHECK(std::fabs(rectangle_sum(m, h.rows, h.cols)) == doctest::Approx(h.value).epsilon(1e-12));
  }

  // Non-negative rank-1: the full sum is optimal and found immediately.
  int n = 6;
  std::vector<double> u{0.5, 1.0, 0.0, 2.0, 0.25, 1.5}, v{1.0, 0.5, 2.0, 0.0, 1.0, 0.75};
  Matrix m(n);
  double su = 0.0, sv = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = u[i] * v[j];
  for (int i = 0; i < n; ++i) {
    su += u[i];
    sv += v[i];
  }
  CutNormEstimate h = cut_norm_heuristic(m, 1, 0);
  CHECK(h.value == doctest::Approx(su * sv));

  CHECK(cut_norm_heuristic(Matrix(5), 4, 0).value == 0.0);
}

TEST_CASE("heuristic hits the 0.56 target ratio almost always") {
  int total = 0, good = 0;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    int n = 4 + static_cast<int>(seed % 9);  // up to 12
    Matrix m = oracles::random_pm1_matrix(n, 5000 + seed);
    double exact = cut_norm_exact(m).value;
    double heur = cut_norm_heuristic(m, 32, seed).value;
    total++;
    if (heur >= 0.56 * exact - 1e-12) good++;
  }
  CHECK(good >= total * 99 / 100);
}

TEST_CASE("cut norm triangle inequality") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    int n = 4 + static_cast<int>(seed % 5);
    Matrix a = oracles::random_gaussian_matrix(n, 300 + seed);
    Matrix b = oracles::random_gaussian_matrix(n, 600 + seed);
    Matrix c = oracles::random_gaussian_matrix(n, 900 + seed);
    Matrix ab(n), bc(n), ac(n);
    for (int i = 0; i < n * n; ++i) {
      ab.a[i] = a.a[i] - b.a[i];
      bc.a[i] = b.a[i] - c.a[i];
      ac.a[i] = a.a[i] - c.a[i];
    }
    CHECK(cut_norm_exact(ac).value <= cut_norm_exact(ab).value + cut_norm_exact(bc).value + 1e-9);
  }
}

TEST_CASE("cut discrepancies are dominated by the cut norm") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    int n = 5 + static_cast<int>(seed % 6);
    WeightedGraph a = oracles::random_graph(n, 0.5, 40 + seed);
    WeightedGraph b = oracles::random_graph(n, 0.5, 80 + seed);
    double norm = cut_norm_exact(adjacency_difference(a, b)).value;
    for (uint64_t mask = 1; mask + 1 < (1ull << n); ++mask) {
      double diff = std::fabs(cut_weight_mask(a, mask) - cut_weight_mask(b, mask));
      CHECK(diff <= norm + 1e-9);
    }
  }
}
