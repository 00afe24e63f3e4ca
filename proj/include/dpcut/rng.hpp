#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace dpcut {

// Counter-based pseudo-random streams. A stream is keyed by (seed, label);
// draw i is a pure function of (key, i), so any draw can be regenerated in
// isolation and streams with distinct labels never collide.

inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t hash_label(std::string_view label) {
  uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

class NoiseStream {
 public:
  NoiseStream(uint64_t seed, std::string_view label)
      : key_(mix64(seed ^ hash_label(label))) {}

  // Derive a child stream; used to hand disjoint streams to sub-operations.
  NoiseStream child(uint64_t index, std::string_view label) const {
    NoiseStream s(key_ ^ mix64(index), label);
    return s;
  }

  uint64_t bits(uint64_t index) const { return mix64(key_ ^ mix64(index + 1)); }

  // Uniform on (0, 1), never exactly 0 or 1.
  double uniform(uint64_t index) const {
    return (static_cast<double>(bits(index) >> 11) + 0.5) * 0x1.0p-53;
  }

  // N(0, sigma^2) via Box-Muller; each draw consumes two counter slots.
  double gaussian(uint64_t index, double sigma) const {
    if (sigma == 0.0) return 0.0;
    double u1 = uniform(2 * index);
    double u2 = uniform(2 * index + 1);
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  // Laplace with the given scale (mean 0).
  double laplace(uint64_t index, double scale) const {
    if (scale == 0.0) return 0.0;
    double u = uniform(index) - 0.5;
    double s = u < 0.0 ? -1.0 : 1.0;
    return -scale * s * std::log1p(-2.0 * std::fabs(u));
  }

  uint64_t key() const { return key_; }

 private:
  uint64_t key_;
};

}  // namespace dpcut
