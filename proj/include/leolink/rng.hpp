#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "leolink/constants.hpp"

namespace leolink {

/// splitmix64 step; used for seed derivation so that (seed, point, drop)
/// streams are decorrelated and platform independent.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = a;
  std::uint64_t h = splitmix64(s);
  s ^= b * 0x9e3779b97f4a7c15ULL;
  h ^= splitmix64(s);
  s ^= c * 0xc2b2ae3d27d4eb4fULL;
  h ^= splitmix64(s);
  return h;
}

/// Deterministic random stream. Distributions are implemented on top of raw
/// 64-bit draws instead of std:: distributions, whose output is
/// implementation defined; results are therefore bit-identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(hash_seed(seed)) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Modulo bias is negligible for any n used here.
  std::int64_t uniform_int(std::int64_t n) {
    return static_cast<std::int64_t>(next_u64() % static_cast<std::uint64_t>(n));
  }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  /// Circularly symmetric complex Gaussian, unit variance (E|z|^2 = 1).
  std::complex<double> cnormal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
  }

  /// Independent child stream identified by a tag; derived from the
  /// construction seed, so it does not perturb this stream.
  Rng substream(std::uint64_t tag) const { return Rng(hash_seed(seed_, tag, 0x5eedULL)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace leolink
