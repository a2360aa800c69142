#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace holeprobe::detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent generator for the job keyed by (seed, a, b).
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  const std::uint64_t key = splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform integer in [0, bound), bound > 0. Lemire's method; unlike
/// std::uniform_int_distribution the output is the same on every standard
/// library.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  __extension__ using u128 = unsigned __int128;
  u128 m = static_cast<u128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t floor = (0 - bound) % bound;
    while (low < floor) {
      m = static_cast<u128>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// First `k` slots of a Fisher-Yates shuffle of `items`.
template <class T>
void partial_shuffle(std::mt19937_64& rng, std::vector<T>& items, std::size_t k) {
  for (std::size_t i = 0; i < k && i + 1 < items.size(); ++i) {
    const auto j = i + static_cast<std::size_t>(bounded(rng, items.size() - i));
    std::swap(items[i], items[j]);
  }
}

}  // namespace holeprobe::detail
