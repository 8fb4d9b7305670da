#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace fisgen {

// All randomness in the library flows through the helpers below so that
// results are bit-identical across platforms and standard-library versions.
// The engine is std::mt19937_64 (fully specified by the C++ standard); the
// mappings from raw 64-bit draws to doubles/integers are spelled out here
// instead of relying on std::*_distribution, whose algorithms are
// implementation-defined.

using Rng = std::mt19937_64;

/// Uniform double in [0, 1): top 53 bits of one engine draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Unbiased uniform integer in [0, bound) via rejection sampling.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

/// Standard normal deviate via the Box-Muller transform (two uniform draws
/// per value, cosine branch only).
inline double gaussian(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

/// Derives an independent child seed from a base seed and two stream
/// coordinates (e.g. sample index and rule count) with the splitmix64
/// finalizer. Used wherever the experiment needs a fresh generator per
/// work unit.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream,
                              std::uint64_t index) {
  std::uint64_t z = base ^ (stream * 0x9E3779B97F4A7C15ull) ^
                    (index * 0xC2B2AE3D27D4EB4Full);
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

/// Fisher-Yates shuffle driven by uniform_below; std::shuffle is not
/// reproducible across standard libraries.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j =
        static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(i)));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace fisgen
