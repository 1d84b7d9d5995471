// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#include "hyperhit/target_set.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "hyperhit/errors.hpp"

namespace hyperhit {

std::string to_hex(Vertex x) {
  char buffer[17];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x.bits, 16);
  return std::string(buffer, end);
}

Vertex parse_hex(std::string_view text, int n) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  std::uint64_t bits = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), bits, 16);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("malformed hex vertex '" + std::string(text) + "'");
  }
  if ((bits & ~dimension_mask(n)) != 0) {
    throw DomainError("vertex " + std::string(text) +
                      " has bits above dimension " + std::to_string(n));
  }
  return Vertex{bits};
}

TargetSet::TargetSet(int n, std::vector<std::uint64_t> members,
                     Provenance provenance)
    : n_(n), members_(std::move(members)), provenance_(provenance) {
  if (n < 1 || n > kMaxDimension) {
    throw DomainError("TargetSet: dimension must be in [1, 64], got " +
                      std::to_string(n));
  }
  const std::uint64_t mask = dimension_mask(n);
  for (auto bits : members_) {
    if (bits & ~mask) {
      throw DomainError("TargetSet: member " + to_hex(Vertex{bits}) +
                        " exceeds dimension " + std::to_string(n));
    }
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

bool TargetSet::contains(Vertex x) const {
  return std::binary_search(members_.begin(), members_.end(), x.bits);
}

TargetSet TargetSet::without(Vertex x) const {
  TargetSet out = *this;
  auto it = std::lower_bound(out.members_.begin(), out.members_.end(), x.bits);
  if (it != out.members_.end() && *it == x.bits) out.members_.erase(it);
  return out;
}

TargetSet TargetSet::full_cube(int n) {
  if (n > MembershipIndex::kDenseIndexMaxDim) {
    throw ResourceError("full_cube: 2^n members too many to enumerate",
                        std::ldexp(8.0, n));
  }
  std::vector<std::uint64_t> all(std::size_t{1} << n);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return TargetSet(n, std::move(all));
}

MembershipIndex::MembershipIndex(const TargetSet& set) : sorted_(set.members()) {
  if (set.dimension() <= kDenseIndexMaxDim) {
    const std::size_t words =
        std::max<std::size_t>(1, (std::size_t{1} << set.dimension()) / 64);
    dense_.assign(words, 0);
    for (auto bits : set.members()) dense_[bits >> 6] |= 1ull << (bits & 63);
  }
}

bool MembershipIndex::sparse_contains(std::uint64_t bits) const {
  return std::binary_search(sorted_.begin(), sorted_.end(), bits);
}

TargetSet read_set(std::istream& in) {
  std::string line;
  int n = 0;
  std::vector<std::uint64_t> members;
  while (std::getline(in, line)) {
    std::string_view view(line);
    while (!view.empty() && std::isspace(static_cast<unsigned char>(view.front())))
      view.remove_prefix(1);
    if (view.empty() || view.front() == '#') continue;
    if (n == 0) {
      if (!view.starts_with("n=")) {
        throw DomainError("set file: first line must be 'n=<dim>'");
      }
      view.remove_prefix(2);
      auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), n);
      if (ec != std::errc() || n < 1 || n > kMaxDimension) {
        throw DomainError("set file: bad dimension header");
      }
      continue;
    }
    members.push_back(parse_hex(view, n).bits);
  }
  if (n == 0) throw DomainError("set file: missing 'n=<dim>' header");
  return TargetSet(n, std::move(members));
}

TargetSet read_set_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open set file " + path.string());
  return read_set(in);
}

void write_set(std::ostream& out, const TargetSet& set) {
  out << "n=" << set.dimension() << '\n';
  for (auto bits : set.members()) out << to_hex(Vertex{bits}) << '\n';
}

void write_set_file(const std::filesystem::path& path, const TargetSet& set) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write set file " + path.string());
  write_set(out, set);
}

}  // namespace hyperhit
