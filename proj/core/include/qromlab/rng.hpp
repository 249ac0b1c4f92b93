#pragma once

#include <cstdint>
#include <random>

namespace qromlab {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based stream derivation: the generator for (seed, trial, stream)
/// depends only on those three numbers, never on scheduling order.
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t trial,
                                  std::uint64_t stream = 0) {
  const std::uint64_t key =
      splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL) ^
                 splitmix64(stream + 0x8cb92ba72f3d8dd7ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace qromlab
