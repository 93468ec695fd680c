#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

// Portable draws on top of std::mt19937_64. The standard distributions are
// implementation-defined, so seeded outputs would differ between standard
// libraries; these helpers only depend on the engine's specified output.
namespace costplex::rng {

using Engine = std::mt19937_64;

// SplitMix64 finalizer, used to derive independent child seeds.
inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  return mix(mix(mix(mix(master) ^ a) ^ b) ^ c);
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

// Uniform integer in [0, n) by rejection, n > 0.
inline std::uint64_t below(Engine& eng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = eng();
  } while (v >= limit);
  return v % n;
}

// Standard normal via Box-Muller (one value per call, no cached state).
inline double normal(Engine& eng) {
  double u1;
  do {
    u1 = uniform01(eng);
  } while (u1 <= 0.0);
  const double u2 = uniform01(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace costplex::rng
