// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace hyperhit {

/// Maximum dimension of the bit-packed representation.
inline constexpr int kMaxDimension = 64;

/// A point of {0,1}^n packed into the low n bits of a word.
struct Vertex {
  std::uint64_t bits = 0;

  friend constexpr bool operator==(Vertex, Vertex) = default;
  friend constexpr auto operator<=>(Vertex, Vertex) = default;
};

/// Hamming distance.
constexpr int distance(Vertex x, Vertex y) {
  return std::popcount(x.bits ^ y.bits);
}

constexpr int weight(Vertex x) { return std::popcount(x.bits); }

/// One move of the simple random walk: flip coordinate `u`.
constexpr Vertex step(Vertex x, unsigned u) {
  return Vertex{x.bits ^ (std::uint64_t{1} << u)};
}

/// All-ones mask of the low n bits.
constexpr std::uint64_t dimension_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

/// The vertex with the first k coordinates set; d(z_k, 0) = k.
constexpr Vertex z_k(int k) { return Vertex{dimension_mask(k)}; }

std::string to_hex(Vertex x);

/// Parses lowercase or uppercase hex, with or without a 0x prefix. Throws
/// DomainError on malformed input or bits above dimension n.
Vertex parse_hex(std::string_view text, int n);

}  // namespace hyperhit
