// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>

namespace hyperhit {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derives the seed of an independent stream from a root seed and a path of
/// stream keys (e.g. trial index, disorder index). No sequential dependence:
/// stream (root, a, b) can be built without touching any other stream.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t key) {
  return mix64(root + mix64(key + 0x9e3779b97f4a7c15ull));
}

constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t key0,
                                    std::uint64_t key1) {
  return derive_seed(derive_seed(root, key0), key1);
}

/// Counter-based SplitMix64 engine: the k-th output is mix64(seed + k*gamma).
/// Satisfies UniformRandomBitGenerator, so it plugs into <random>
/// distributions.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

/// Uniform double in [0, 1) from the top 53 bits.
template <class Engine>
double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Unbiased uniform integer in [0, range) from a 32-bit draw (Lemire's
/// multiply-shift with rejection). `range` must be positive.
template <class Engine>
std::uint32_t uniform_below(Engine& engine, std::uint32_t range) {
  std::uint64_t product =
      static_cast<std::uint64_t>(static_cast<std::uint32_t>(engine() >> 32)) *
      range;
  auto low = static_cast<std::uint32_t>(product);
  if (low < range) {
    const std::uint32_t threshold = (0u - range) % range;
    while (low < threshold) {
      product = static_cast<std::uint64_t>(
                    static_cast<std::uint32_t>(engine() >> 32)) *
                range;
      low = static_cast<std::uint32_t>(product);
    }
  }
  return static_cast<std::uint32_t>(product >> 32);
}

}  // namespace hyperhit
