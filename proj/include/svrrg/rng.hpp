#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace svrrg {

/// Seeded random stream with distribution code owned by this project, so that
/// sequences are identical across standard-library implementations. Traces
/// must reproduce byte-for-byte from a seed, which rules out the
/// implementation-defined std:: distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (stateless: one fresh pair per draw).
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  /// Uniform index in [0, count), exact (rejection sampling, no modulo bias).
  int uniform_index(int count) {
    const auto n = static_cast<std::uint64_t>(count);
    const std::uint64_t rem = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = engine_();
      if (r <= UINT64_MAX - rem) return static_cast<int>(r % n);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace svrrg
