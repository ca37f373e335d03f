#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dramcell {

/// Deterministic random source: mt19937_64 (bit-exact by the standard) with
/// explicit variate construction, so populations reproduce across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(mix(seed)) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Log-uniform over [lo, hi]; draws are clamped into the range so rounding
  /// never escapes the profile bounds.
  double log_uniform(double lo, double hi) {
    const double v = lo * std::exp(uniform01() * std::log(hi / lo));
    return std::min(std::max(v, lo), hi);
  }

  /// Standard normal via Box-Muller on explicit uniforms (two draws per
  /// call, no cached spare).
  double gaussian() {
    double u1 = uniform01();
    const double u2 = uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer; decorrelates small consecutive seeds.
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 eng_;
};

}  // namespace dramcell
