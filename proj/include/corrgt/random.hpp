#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>

namespace corrgt {

using Seed = std::uint64_t;
using Rng = std::mt19937_64;

constexpr Seed splitmix64(Seed x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of trial `t` in a campaign seeded with `seed`. Parallel execution
/// must use this so results do not depend on scheduling.
constexpr Seed trial_seed(Seed seed, std::uint64_t trial) noexcept { return seed ^ trial; }

/// Independent sub-stream of `seed` (edge mask, states, strategy, ...).
constexpr Seed derive_seed(Seed seed, std::uint64_t stream) noexcept {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

inline Rng make_rng(Seed seed) { return Rng(splitmix64(seed)); }

// The helpers below avoid std:: distributions so that streams are identical
// across standard library implementations.

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// True with probability p; p <= 0 never fires, p >= 1 always does.
inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

/// Uniform integer in [0, bound), bound > 0, without modulo bias.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

template <typename It>
void shuffle(It first, It last, Rng& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const auto j = uniform_index(rng, i);
    std::iter_swap(first + (i - 1), first + j);
  }
}

}  // namespace corrgt
