#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace necorr {

/// One SplitMix64 output step applied to `x`.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Portable seeded generator: std::mt19937_64 (whose output sequence is fixed
/// by the standard) plus hand-written draws, since the standard
/// distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for (seed, name): the engine is seeded with
  /// splitmix64(seed ^ splitmix64(fnv1a64(name))).
  static Rng for_stream(std::uint64_t seed, std::string_view name);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform in [0, n) by rejection; n must be positive.
  std::size_t index(std::size_t n);
  /// Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) {
    return lo + index(hi - lo + 1);
  }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace necorr
