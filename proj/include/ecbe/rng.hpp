#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ecbe {

/// Seeded random source with explicitly-coded draw functions so that a fixed
/// seed yields the same stream on every platform and standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n) {
    // 64 bits of state against n values; modulo bias is negligible here.
    return engine_() % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal deviate (Box-Muller, pair-cached).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  /// Derives an independent seed for a child stream.
  std::uint64_t fork() { return engine_(); }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ecbe
