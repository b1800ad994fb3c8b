#pragma once

#include <cmath>
#include <cstdint>

namespace topoharq {

/// Deterministic 64-bit generator (splitmix64) with cheap stream derivation.
///
/// Every stochastic component takes one of these explicitly; the library
/// never touches global RNG state. Draws are reproducible bit for bit across
/// runs for a fixed seed, which the output formats rely on.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  /// Child generator for (base seed, stream index). Each transmission slot,
  /// sweep task or corpus item gets its own stream so parallel schedules
  /// cannot change the draws.
  static Rng derive(uint64_t base_seed, uint64_t stream) {
    return Rng(mix(base_seed + 0x9e3779b97f4a7c15ull * (stream + 1)));
  }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  /// Uniform draw in (0, 1]; never returns 0 so log() stays finite.
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform draw in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the second member of each pair is
  /// cached, so draws come in a fixed order regardless of call pattern.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Integer in [0, n).
  uint64_t below(uint64_t n) { return next_u64() % n; }

private:
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace topoharq
