// Seeded randomness helpers. All draws go through mt19937_64 plus fixed
// arithmetic so that streams are reproducible across platforms and standard
// library versions.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace lsattack::rng {

using Engine = std::mt19937_64;

// Uniform double in [0, 1) with 53 bits of randomness.
inline double uniform(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform(eng);
}

// Uniform integer in [0, n). Modulo bias is negligible for the small n used
// here.
inline std::uint64_t uniform_index(Engine& eng, std::uint64_t n) {
  return eng() % n;
}

// Standard normal via Box-Muller; two uniforms per draw, no hidden state.
inline double normal(Engine& eng) {
  double u1 = uniform(eng);
  double u2 = uniform(eng);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

// Derives an independent per-item stream from a campaign seed.
inline Engine derive(std::uint64_t seed, std::uint64_t item) {
  return Engine(seed ^ (0x9e3779b97f4a7c15ULL * (item + 1)));
}

template <typename T>
void shuffle(std::vector<T>& v, Engine& eng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_index(eng, i)]);
  }
}

}  // namespace lsattack::rng
