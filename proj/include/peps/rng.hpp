// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace peps {

/// Name written to circuit files so other implementations can reproduce them.
inline constexpr const char* kGeneratorName = "mt19937_64+splitmix64";

/// Stream indices reserved for non-circuit uses.
inline constexpr std::uint64_t kTauStream = 0xFFFF'FFFF'0000'0001ULL;
inline constexpr std::uint64_t kMeasureStream = 0xFFFF'FFFF'0000'0002ULL;

/// One step of SplitMix64 applied to `x`.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent stream `stream` of the generator family rooted at `seed`:
/// std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(stream)).
/// Both pieces are fully specified, so the output is platform independent.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection, so the result is portable.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

}  // namespace peps
