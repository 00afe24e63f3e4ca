#include "dpcut/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "dpcut/rng.hpp"

namespace dpcut {

PrivacyBudget::PrivacyBudget(double eps, double del) : epsilon(eps), delta(del) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw std::invalid_argument("epsilon must be >= 0");
  if (!(del >= 0.0) || del >= 1.0) throw std::invalid_argument("delta must be in [0, 1)");
}

std::vector<PrivacyBudget> PrivacyBudget::split(int k) const {
  if (k < 1) throw std::invalid_argument("split needs k >= 1");
  return std::vector<PrivacyBudget>(k, PrivacyBudget(epsilon / k, delta / k));
}

PrivacyBudget compose(std::span<const PrivacyBudget> budgets) {
  PrivacyBudget out(0.0, 0.0);
  for (const auto& b : budgets) {
    out.epsilon += b.epsilon;
    out.delta += b.delta;
  }
  return out;
}

PrivacyBudget BudgetLedger::total() const {
  PrivacyBudget out(0.0, 0.0);
  for (const auto& [label, b] : charges_) {
    out.epsilon += b.epsilon;
    out.delta += b.delta;
  }
  return out;
}

double gaussian_sigma_for(double epsilon, double delta) {
  if (epsilon <= 0.0) throw std::invalid_argument("gaussian mechanism needs epsilon > 0");
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("gaussian mechanism needs 0 < delta < 1");
  return std::sqrt(2.0 * std::log(1.25 / delta)) / epsilon;
}

std::string AuditResult::to_json() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "{\"family\":\"%s\",\"sigma_or_scale\":%.17g,\"trials\":%ld,"
                "\"epsilon_hat\":%.17g,\"bins\":%d,\"smoothed_bins\":%d}",
                family.c_str(), scale, trials, epsilon_hat, bins, smoothed_bins);
  return buf;
}

namespace {

// Inverse CDF of the zero-centred noise distribution; used to place
// equal-mass bin edges so every bin stays well populated.
double noise_quantile(NoiseFamily family, double scale, double p) {
  if (family == NoiseFamily::laplace) {
    double u = p - 0.5;
    double s = u < 0.0 ? -1.0 : 1.0;
    return -scale * s * std::log1p(-2.0 * std::fabs(u));
  }
  double lo = -12.0 * scale, hi = 12.0 * scale;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (0.5 * (1.0 + std::erf(mid / (scale * std::sqrt(2.0)))) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

AuditResult audit_scalar_mechanism(const NoiseSpec& noise, double sensitivity, long trials, int bins) {
  if (trials < 1 || bins < 2) throw std::invalid_argument("audit needs trials >= 1 and bins >= 2");
  if (noise.scale <= 0.0) throw std::invalid_argument("audit needs a positive noise scale");
  // Edges are the input-0 distribution's quantiles shifted to cover both
  // inputs; the first and last bins absorb the tails.
  std::vector<double> edges(bins - 1);
  for (int b = 1; b < bins; ++b)
    edges[b - 1] = noise_quantile(noise.family, noise.scale, static_cast<double>(b) / bins) +
                   sensitivity * (static_cast<double>(b) / bins);

  NoiseStream stream(noise.seed, "audit");
  std::vector<long> c0(bins, 0), c1(bins, 0);
  auto bin_of = [&](double x) {
    return static_cast<int>(std::upper_bound(edges.begin(), edges.end(), x) - edges.begin());
  };
  for (long t = 0; t < trials; ++t) {
    double z0, z1;
    if (noise.family == NoiseFamily::laplace) {
      z0 = stream.laplace(2 * t, noise.scale);
      z1 = stream.laplace(2 * t + 1, noise.scale);
    } else {
      z0 = stream.gaussian(2 * t, noise.scale);
      z1 = stream.gaussian(2 * t + 1, noise.scale);
    }
    c0[bin_of(z0)]++;
    c1[bin_of(sensitivity + z1)]++;
  }

  AuditResult res;
  res.family = noise.family == NoiseFamily::laplace ? "laplace" : "gaussian";
  res.scale = noise.scale;
  res.trials = trials;
  res.bins = bins;
  double denom = static_cast<double>(trials) + bins;  // add-one smoothing
  for (int b = 0; b < bins; ++b) {
    if (c0[b] == 0 || c1[b] == 0) res.smoothed_bins++;
    double p0 = (c0[b] + 1) / denom;
    double p1 = (c1[b] + 1) / denom;
    res.epsilon_hat = std::max(res.epsilon_hat, std::fabs(std::log(p0 / p1)));
  }
  return res;
}

}  // namespace dpcut
