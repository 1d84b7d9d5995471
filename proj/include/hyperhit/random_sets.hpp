// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>

#include "hyperhit/combinatorics.hpp"
#include "hyperhit/target_set.hpp"
#include "hyperhit/vertex.hpp"

namespace hyperhit {

/// Largest n for which sets are materialized explicitly.
inline constexpr int kExplicitSetMaxDim = 36;

/// Largest expected member count a generator will allocate.
inline constexpr double kMaxSetSize = double(1u << 28);

/// Counts indexed by distance 0..n.
using Profile = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Each vertex independently with probability rho. Drawn as |A| ~ Bin(2^n,
/// rho) followed by a uniform |A|-subset, which has the same law.
TargetSet percolation_cloud(int n, double rho, std::uint64_t seed);

/// Uniform M-subset of {0,1}^n (Floyd's algorithm, complemented when M is
/// more than half the cube).
TargetSet sample_without_replacement(int n, std::uint64_t count,
                                     std::uint64_t seed);

/// v[k] = #{y in B : d(x, y) = k}.
Profile distance_profile(const TargetSet& targets, Vertex x);

/// Worst-case sphere and ball counts over centres:
///   sphere[k] = max_x #{y in B : d(x,y) = k}       (v_n(k))
///   ball[k]   = max_x #{y in B : d(x,y) <= k}      (V_n(k))
/// `is_lower_bound` is set when the max runs over a sample of centres.
struct VolumeStats {
  Profile sphere;
  Profile ball;
  bool is_lower_bound = false;
};

/// Exact over all 2^n centres. Each distance class is an XOR-convolution of
/// the indicator of B with a sphere indicator, evaluated with the
/// Walsh-Hadamard transform (the sphere's transform is a Krawtchouk
/// polynomial in |u|), so the cost is O(n^2 2^n) independent of |B|.
/// Requires n <= kExactVolumeMaxDim.
inline constexpr int kExactVolumeMaxDim = 24;
VolumeStats volume_stats_exact(const TargetSet& targets);

/// Max over all x in B plus `extra` seeded uniform centres; flagged as a
/// lower bound.
VolumeStats volume_stats_sampled(const TargetSet& targets, std::uint64_t extra,
                                 std::uint64_t seed);

/// Same statistics by direct enumeration of centres and popcounts. Slow;
/// kept as the reference the transform route is checked against.
VolumeStats volume_stats_brute_force(const TargetSet& targets);

struct VnMax {
  std::int64_t value = 0;
  bool is_lower_bound = false;
};

/// v_n(k) in exact mode (sampled_centres == 0) or sampled mode.
VnMax vn_max(const TargetSet& targets, int k, std::uint64_t sampled_centres = 0,
             std::uint64_t seed = 0);

/// Finite-n cut-offs for the asymptotic conditions. size: |ratio - 1| <= size.
struct ConditionThresholds {
  double size = 0.2;
  double xi_gap = 0.2;
  double vsum = 0.2;
  double vbig = 0.2;
};

struct ConditionVerdicts {
  bool size = false;
  bool xi_gap = false;
  bool vsum = false;
  bool vbig = false;

  bool all() const { return size && xi_gap && vsum && vbig; }
};

/// Numeric evidence for the hypotheses of the general exponential-limit
/// theorem on one set at one (n, m).
struct ConditionReport {
  int n = 0;
  double m = 0;
  std::uint64_t set_size = 0;
  double size_ratio = 0;  // |B| m / 2^n
  GThreshold g;
  double xi_gap = 0;      // xi_n(g) 2^n / m
  double vsum = 0;        // sum_{k=1}^{g-1} v_n(k) xi_n(k)
  double vbig_ratio = 0;  // V_n(g-1) / |B|
  bool exact_stats = true;
  ConditionThresholds thresholds;
  ConditionVerdicts verdicts;
};

/// Computes the report; `exact_stats` selects exact or sampled volume
/// statistics (sampled: members of B plus 4096 seeded centres).
ConditionReport check_conditions(const TargetSet& targets, double m,
                                 const ConditionThresholds& thresholds = {},
                                 bool exact_stats = true,
                                 std::uint64_t seed = 0);

/// Verdicts as pure functions of the numbers in the report.
ConditionVerdicts judge(const ConditionReport& report,
                        const ConditionThresholds& thresholds);

/// Empirical constant v_n(k) / (C(n,k) rho + f_n(k)) with f_n(1) =
/// n / ln(1/rho) and f_n(k) = n for k > 1, maximized over k = 1..kmax.
double cloud_constant(const VolumeStats& stats, int n, double rho, int kmax);

std::string to_json(const ConditionReport& report);

}  // namespace hyperhit
