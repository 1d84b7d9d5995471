// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "hyperhit/vertex.hpp"

namespace hyperhit {

/// How a target set came to be; carried along for reports.
struct Provenance {
  enum class Kind { kExplicit, kPercolation, kSampled };
  Kind kind = Kind::kExplicit;
  double rho = 0;         // percolation density
  std::uint64_t size = 0;  // sampled size M
  std::uint64_t seed = 0;
};

/// An explicit subset of {0,1}^n, stored as a sorted duplicate-free list.
class TargetSet {
 public:
  TargetSet() = default;

  /// Sorts and deduplicates. Throws DomainError if a member has bits above
  /// dimension n or n is outside [1, 64].
  TargetSet(int n, std::vector<std::uint64_t> members, Provenance provenance = {});

  int dimension() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::span<const std::uint64_t> members() const { return members_; }
  const Provenance& provenance() const { return provenance_; }

  bool contains(Vertex x) const;

  /// This set minus one point (no-op if x is not a member).
  TargetSet without(Vertex x) const;

  static TargetSet singleton(int n, Vertex x) {
    return TargetSet(n, {x.bits});
  }
  static TargetSet full_cube(int n);

 private:
  int n_ = 0;
  std::vector<std::uint64_t> members_;
  Provenance provenance_;
};

/// O(1) membership for walkers: a dense bitmap up to n = kDenseIndexMaxDim,
/// binary search above.
class MembershipIndex {
 public:
  static constexpr int kDenseIndexMaxDim = 28;

  explicit MembershipIndex(const TargetSet& set);

  bool contains(std::uint64_t bits) const {
    if (!dense_.empty()) return (dense_[bits >> 6] >> (bits & 63)) & 1u;
    return sparse_contains(bits);
  }

 private:
  bool sparse_contains(std::uint64_t bits) const;

  std::vector<std::uint64_t> dense_;
  std::span<const std::uint64_t> sorted_;
};

/// Set file: a header line `n=<dim>` then one hex vertex per line. Blank
/// lines and lines starting with '#' are ignored.
TargetSet read_set(std::istream& in);
TargetSet read_set_file(const std::filesystem::path& path);
void write_set(std::ostream& out, const TargetSet& set);
void write_set_file(const std::filesystem::path& path, const TargetSet& set);

}  // namespace hyperhit
