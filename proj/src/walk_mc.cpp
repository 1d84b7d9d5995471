// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#include "hyperhit/walk_mc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperhit/errors.hpp"
#include "hyperhit/rng.hpp"

namespace hyperhit {
namespace {

WalkOutcome walk_until_hit(const MembershipIndex& index, int n, Vertex x,
                           std::uint64_t cap, SplitMix64& rng) {
  std::uint64_t position = x.bits;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    position ^= std::uint64_t{1} << uniform_below(rng, static_cast<std::uint32_t>(n));
    if (position != x.bits && index.contains(position)) return {k, true};
  }
  return {cap, false};
}

}  // namespace

double HittingEmpirical::survival(double a) const {
  if (trials == 0) return 0.0;
  const auto first = std::lower_bound(samples.begin(), samples.end(), a);
  return double(samples.end() - first) / double(trials);
}

HittingEmpirical simulate_hitting(const TargetSet& targets, Vertex x, double m,
                                  std::uint64_t trials, std::uint64_t seed,
                                  std::uint64_t cap) {
  const int n = targets.dimension();
  if (!(m > 0)) throw DomainError("simulate_hitting: m must be positive");
  if ((x.bits & ~dimension_mask(n)) != 0) {
    throw DomainError("simulate_hitting: start outside the cube");
  }
  if (targets.without(x).empty()) {
    throw DomainError("simulate_hitting: empty effective target B \\ {x}");
  }
  if (cap == 0) cap = static_cast<std::uint64_t>(std::ceil(kDefaultCapFactor * m));

  const MembershipIndex index(targets);
  HittingEmpirical out;
  out.m = m;
  out.trials = trials;
  out.seed = seed;
  out.cap_over_m = double(cap) / m;
  out.samples.resize(trials);
  std::vector<char> censored(trials, 0);

  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t t = 0; t < count; ++t) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const WalkOutcome outcome = walk_until_hit(index, n, x, cap, rng);
    out.samples[t] = double(outcome.steps) / m;
    censored[t] = !outcome.hit;
  }
  for (char c : censored) out.censored += c ? 1 : 0;
  std::sort(out.samples.begin(), out.samples.end());
  return out;
}

double ks_to_exponential(std::span<const double> sorted) {
  if (sorted.empty()) throw DomainError("ks_to_exponential: empty sample");
  const double total = double(sorted.size());
  double worst = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    // Group ties: at a = value, S_hat = (N - i)/N; just above, (N - j)/N.
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double reference = std::exp(-sorted[i]);
    const double at = double(sorted.size() - i) / total;
    const double above = double(sorted.size() - j) / total;
    worst = std::max({worst, std::abs(at - reference), std::abs(above - reference)});
    i = j;
  }
  return worst;
}

KsResult ks_to_exponential(const HittingEmpirical& sample) {
  KsResult out;
  out.distance = ks_to_exponential(sample.samples);
  out.censored_fraction = sample.censored_fraction();
  out.flagged = out.censored_fraction > 0.01;
  return out;
}

double dkw_band(std::uint64_t trials, double delta) {
  if (trials == 0 || !(delta > 0 && delta < 1)) {
    throw DomainError("dkw_band: need trials > 0 and delta in (0,1)");
  }
  return std::sqrt(std::log(2.0 / delta) / (2.0 * double(trials)));
}

}  // namespace hyperhit
