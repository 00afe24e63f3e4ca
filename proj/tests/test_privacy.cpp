#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dpcut/privacy.hpp"
#include "dpcut/rng.hpp"

using namespace dpcut;

TEST_CASE("compose sums budgets") {
  PrivacyBudget b(1.5, 0.3);
  auto thirds = b.split(3);
  PrivacyBudget back = compose(thirds);
  CHECK(back.epsilon == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(back.delta == doctest::Approx(0.3).epsilon(1e-12));

  CHECK(compose(std::vector<PrivacyBudget>{}).epsilon == 0.0);
  CHECK(compose(std::vector<PrivacyBudget>{}).delta == 0.0);

  std::vector<PrivacyBudget> two{PrivacyBudget(1, 0), PrivacyBudget(2, 0)};
  CHECK(compose(two).epsilon == doctest::Approx(3.0));

  CHECK_THROWS_AS(PrivacyBudget(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PrivacyBudget(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("ledger totals are permutation invariant") {
  BudgetLedger a, b;
  std::vector<std::pair<std::string, PrivacyBudget>> charges{
      {"x", PrivacyBudget(0.1, 1e-7)}, {"y", PrivacyBudget(0.7, 2e-7)}, {"z", PrivacyBudget(0.2, 0.0)}};
  for (const auto& [l, c] : charges) a.charge(l, c);
  std::reverse(charges.begin(), charges.end());
  for (const auto& [l, c] : charges) b.charge(l, c);
  CHECK(a.total().epsilon == doctest::Approx(b.total().epsilon).epsilon(1e-12));
  CHECK(a.total().delta == doctest::Approx(b.total().delta).epsilon(1e-12));
}

TEST_CASE("gaussian sigma calibration") {
  CHECK(gaussian_sigma_for(1.0, 1.25 / std::exp(2.0)) == doctest::Approx(2.0));
  double s1 = gaussian_sigma_for(1.0, 1e-4);
  CHECK(gaussian_sigma_for(0.5, 1e-4) == doctest::Approx(2.0 * s1));
  CHECK(gaussian_sigma_for(1.0, 1e-5) == doctest::Approx(std::sqrt(2.0 * std::log(1.25e5))));
  CHECK(gaussian_sigma_for(1.0, 1e-5) == doctest::Approx(4.84).epsilon(1e-2));
  CHECK_THROWS_AS(gaussian_sigma_for(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("noise streams are reproducible and label-separated") {
  NoiseStream a(42, "op");
  NoiseStream b(42, "op");
  NoiseStream c(42, "other");
  for (uint64_t i = 0; i < 50; ++i) {
    CHECK(a.uniform(i) == b.uniform(i));
    CHECK(a.gaussian(i, 1.0) == b.gaussian(i, 1.0));
  }
  int collisions = 0;
  for (uint64_t i = 0; i < 1000; ++i)
    if (a.bits(i) == c.bits(i)) collisions++;
  CHECK(collisions == 0);
}

TEST_CASE("noise moments are roughly right") {
  NoiseStream s(7, "moments");
  double lap_mean = 0.0, lap_abs = 0.0, gauss_mean = 0.0, gauss_sq = 0.0;
  const int trials = 200000;
  for (int i = 0; i < trials; ++i) {
    double l = s.laplace(i, 2.0);
    lap_mean += l;
    lap_abs += std::fabs(l);
    double gvals = s.gaussian(static_cast<uint64_t>(trials) + i, 3.0);
    gauss_mean += gvals;
    gauss_sq += gvals * gvals;
  }
  CHECK(lap_mean / trials == doctest::Approx(0.0).epsilon(0.05));
  CHECK(lap_abs / trials == doctest::Approx(2.0).epsilon(0.05));
  CHECK(gauss_mean / trials == doctest::Approx(0.0).epsilon(0.05));
  CHECK(gauss_sq / trials == doctest::Approx(9.0).epsilon(0.05));
}

TEST_CASE("scalar audit recovers epsilon for laplace") {
  NoiseSpec spec;
  spec.family = NoiseFamily::laplace;
  spec.scale = 1.0;
  spec.seed = 11;
  AuditResult res = audit_scalar_mechanism(spec, 1.0, 300000, 40);
  CHECK(res.epsilon_hat > 0.88);
  CHECK(res.epsilon_hat < 1.12);

  // Identical inputs: estimate collapses to sampling noise.
  AuditResult zero = audit_scalar_mechanism(spec, 0.0, 400000, 20);
  CHECK(zero.epsilon_hat < 0.05);
}

TEST_CASE("scalar audit bounds the gaussian mechanism") {
  NoiseSpec spec;
  spec.family = NoiseFamily::gaussian;
  spec.scale = gaussian_sigma_for(1.0, 1e-5);
  spec.seed = 13;
  AuditResult res = audit_scalar_mechanism(spec, 1.0, 300000, 40);
  CHECK(res.epsilon_hat <= 1.1);
  CHECK(res.to_json().find("\"family\":\"gaussian\"") != std::string::npos);
}
