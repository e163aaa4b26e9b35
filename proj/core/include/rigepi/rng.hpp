#pragma once

#include <cstdint>
#include <random>

namespace rigepi {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of stream `index` under `master`. Fixed function, independent of
/// thread count and evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index ^ 0x5851f42d4c957f2dULL));
}

inline double to_unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Uniform [0,1) coin attached to the undirected edge {u, v} under `seed`.
/// Symmetric in (u, v), so every traversal order sees the same coin.
inline double edge_coin(std::uint64_t seed, std::uint32_t u, std::uint32_t v) {
  const std::uint64_t lo = u < v ? u : v;
  const std::uint64_t hi = u < v ? v : u;
  return to_unit_interval(mix64(mix64(seed) ^ ((lo << 32) | hi)));
}

}  // namespace rigepi
