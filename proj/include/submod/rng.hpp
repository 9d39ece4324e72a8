#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace submod {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic stream for one (seed, index) pair.
///
/// mt19937_64 output is fixed by the standard; the uniform and normal
/// conversions are done here rather than with <random> distributions, whose
/// algorithms differ between standard libraries.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t index)
      : engine_(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL))) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1].
  double uniform_open_zero() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal by Box-Muller (cosine branch only).
  double normal() {
    const double u1 = uniform_open_zero();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace submod
