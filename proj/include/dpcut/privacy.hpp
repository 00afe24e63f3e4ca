#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dpcut {

struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;

  PrivacyBudget() = default;
  PrivacyBudget(double eps, double del);

  // k equal shares (eps/k, delta/k); composing them back recovers the
  // original up to float rounding.
  std::vector<PrivacyBudget> split(int k) const;
  PrivacyBudget scaled(double f) const { return PrivacyBudget(epsilon * f, delta * f); }
};

PrivacyBudget compose(std::span<const PrivacyBudget> budgets);

// Ordered log of sub-budgets charged by a mechanism.
class BudgetLedger {
 public:
  void charge(const std::string& label, PrivacyBudget b) { charges_.emplace_back(label, b); }
  PrivacyBudget total() const;
  const std::vector<std::pair<std::string, PrivacyBudget>>& charges() const { return charges_; }
  void append(const BudgetLedger& other) {
    charges_.insert(charges_.end(), other.charges_.begin(), other.charges_.end());
  }

 private:
  std::vector<std::pair<std::string, PrivacyBudget>> charges_;
};

// Standard Gaussian-mechanism calibration for an l2-sensitivity-1 query:
// sigma = sqrt(2 ln(1.25/delta)) / epsilon. Requires delta > 0.
double gaussian_sigma_for(double epsilon, double delta);

enum class NoiseFamily { laplace, gaussian };

struct NoiseSpec {
  NoiseFamily family = NoiseFamily::laplace;
  double scale = 1.0;  // Laplace scale or Gaussian sigma
  uint64_t seed = 0;
};

struct AuditResult {
  std::string family;
  double scale = 0.0;
  long trials = 0;
  int bins = 0;
  double epsilon_hat = 0.0;
  int smoothed_bins = 0;  // bins that were empty on either side
  std::string to_json() const;
};

// Empirical epsilon of a scalar additive-noise mechanism: histogram the
// mechanism on inputs 0 and `sensitivity`, report the max absolute log ratio
// over bins (add-one smoothing). The histogram spans
// [-4*scale, sensitivity + 4*scale]; outliers land in the edge bins.
AuditResult audit_scalar_mechanism(const NoiseSpec& noise, double sensitivity, long trials, int bins);

}  // namespace dpcut
