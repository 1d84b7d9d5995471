// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hyperhit/target_set.hpp"
#include "hyperhit/vertex.hpp"

namespace hyperhit {

/// Default censoring cap, in units of m.
inline constexpr double kDefaultCapFactor = 50.0;

/// Normalized hitting times H/m from independent walks. Censored
/// trajectories are stored at cap/m and counted separately.
struct HittingEmpirical {
  double m = 1;
  std::vector<double> samples;  // sorted ascending
  std::uint64_t trials = 0;
  std::uint64_t censored = 0;
  std::uint64_t seed = 0;
  double cap_over_m = 0;

  /// #{samples >= a} / trials.
  double survival(double a) const;
  double censored_fraction() const {
    return trials ? double(censored) / double(trials) : 0.0;
  }
};

/// `trials` walks from x, each recording min{k >= 0 : Y(k) in B \ x} / m,
/// censored at `cap` steps. Trajectory t draws from the stream
/// derive_seed(seed, t) only, so the result is independent of thread count
/// and execution order. cap <= 0 selects kDefaultCapFactor * m.
HittingEmpirical simulate_hitting(const TargetSet& targets, Vertex x, double m,
                                  std::uint64_t trials, std::uint64_t seed,
                                  std::uint64_t cap = 0);

/// First step index at which the walk from x lands in B \ x, or `cap` if it
/// never does within cap steps (second value false in that case).
struct WalkOutcome {
  std::uint64_t steps = 0;
  bool hit = false;
};

struct KsResult {
  double distance = 0;
  double censored_fraction = 0;
  bool flagged = false;  // censored mass above 1%
};

/// sup_{a >= 0} |S_hat(a) - e^{-a}| for the empirical survival
/// S_hat(a) = #{samples >= a}/N, evaluated on both sides of every jump
/// (the exact KS statistic of a step function against a continuous law).
/// Throws DomainError on an empty sample.
KsResult ks_to_exponential(const HittingEmpirical& sample);
double ks_to_exponential(std::span<const double> sorted_samples);

/// Dvoretzky-Kiefer-Wolfowitz half-width sqrt(ln(2/delta) / (2 N)).
double dkw_band(std::uint64_t trials, double delta);

}  // namespace hyperhit
