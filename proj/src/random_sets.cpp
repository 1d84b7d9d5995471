// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#include "hyperhit/random_sets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include <json.hpp>

#include "hyperhit/errors.hpp"
#include "hyperhit/rng.hpp"

namespace hyperhit {
namespace {

void require_explicit_dim(int n, const char* op) {
  if (n < 1) throw DomainError(std::string(op) + ": n must be positive");
  if (n > kExplicitSetMaxDim) {
    throw ResourceError(std::string(op) + ": n=" + std::to_string(n) +
                            " is beyond explicit enumeration (n <= " +
                            std::to_string(kExplicitSetMaxDim) + ")",
                        std::ldexp(1.0, n));
  }
}

// Floyd's algorithm: a uniform `count`-subset of [0, universe).
std::vector<std::uint64_t> floyd_sample(std::uint64_t universe,
                                        std::uint64_t count, SplitMix64& rng,
                                        int n) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  const bool dense = n <= MembershipIndex::kDenseIndexMaxDim;
  std::vector<std::uint64_t> bitmap;
  std::unordered_set<std::uint64_t> seen;
  if (dense) bitmap.assign(std::max<std::uint64_t>(1, universe / 64), 0);
  auto test_and_set = [&](std::uint64_t v) {
    if (dense) {
      auto& word = bitmap[v >> 6];
      const std::uint64_t bit = 1ull << (v & 63);
      const bool had = word & bit;
      word |= bit;
      return had;
    }
    return !seen.insert(v).second;
  };
  for (std::uint64_t j = universe - count; j < universe; ++j) {
    std::uniform_int_distribution<std::uint64_t> pick(0, j);
    const std::uint64_t t = pick(rng);
    if (test_and_set(t)) {
      test_and_set(j);
      out.push_back(j);
    } else {
      out.push_back(t);
    }
  }
  return out;
}

// In-place Walsh-Hadamard transform (unnormalized).
void walsh_hadamard(std::vector<std::int64_t>& data) {
  const std::size_t size = data.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const std::int64_t a = data[i], b = data[i + half];
        data[i] = a + b;
        data[i + half] = a - b;
      }
    }
  }
}

// Krawtchouk polynomial K_k(w) for dimension n: the Walsh-Hadamard transform
// of the radius-k sphere indicator at any u with |u| = w.
std::int64_t krawtchouk(int n, int k, int w) {
  std::int64_t sum = 0;
  for (int j = 0; j <= std::min(k, w); ++j) {
    if (k - j > n - w) continue;
    const std::int64_t term =
        binom_exact(w, j).get_si() * binom_exact(n - w, k - j).get_si();
    sum += (j % 2) ? -term : term;
  }
  return sum;
}

void accumulate_centre(const TargetSet& targets, std::uint64_t centre,
                       VolumeStats& stats, Profile& scratch) {
  const int n = targets.dimension();
  scratch.setZero();
  for (auto y : targets.members()) ++scratch[std::popcount(centre ^ y)];
  std::int64_t ball = 0;
  for (int k = 0; k <= n; ++k) {
    ball += scratch[k];
    stats.sphere[k] = std::max(stats.sphere[k], scratch[k]);
    stats.ball[k] = std::max(stats.ball[k], ball);
  }
}

VolumeStats empty_stats(int n) {
  return {Profile::Zero(n + 1), Profile::Zero(n + 1), false};
}

}  // namespace

TargetSet percolation_cloud(int n, double rho, std::uint64_t seed) {
  require_explicit_dim(n, "percolation_cloud");
  if (!(rho >= 0 && rho <= 1)) {
    throw DomainError("percolation_cloud: rho must lie in [0, 1]");
  }
  const double universe = std::ldexp(1.0, n);
  if (universe * rho > kMaxSetSize) {
    throw ResourceError("percolation_cloud: expected size too large",
                        universe * rho);
  }
  SplitMix64 rng(derive_seed(seed, 0x5045524355ull));
  std::uint64_t count = 0;
  if (rho == 1) {
    count = std::uint64_t{1} << n;
  } else if (rho > 0) {
    std::binomial_distribution<std::uint64_t> size(std::uint64_t{1} << n, rho);
    count = size(rng);
  }
  TargetSet drawn = sample_without_replacement(n, count, derive_seed(seed, 1));
  std::vector<std::uint64_t> members(drawn.members().begin(),
                                     drawn.members().end());
  return TargetSet(n, std::move(members),
                   {Provenance::Kind::kPercolation, rho, 0, seed});
}

TargetSet sample_without_replacement(int n, std::uint64_t count,
                                     std::uint64_t seed) {
  require_explicit_dim(n, "sample_without_replacement");
  const std::uint64_t universe = std::uint64_t{1} << n;
  if (count > universe) {
    throw DomainError("sample_without_replacement: M=" + std::to_string(count) +
                      " exceeds 2^n");
  }
  const Provenance provenance{Provenance::Kind::kSampled, 0, count, seed};
  SplitMix64 rng(derive_seed(seed, 0x53414d50ull));
  if (2 * count <= universe) {
    if (double(count) > kMaxSetSize) {
      throw ResourceError("sample_without_replacement: M too large", double(count));
    }
    return TargetSet(n, floyd_sample(universe, count, rng, n), provenance);
  }
  if (double(universe) > kMaxSetSize) {
    throw ResourceError("sample_without_replacement: M too large", double(count));
  }
  std::vector<std::uint64_t> excluded = floyd_sample(universe, universe - count, rng, n);
  std::sort(excluded.begin(), excluded.end());
  std::vector<std::uint64_t> members;
  members.reserve(count);
  auto skip = excluded.begin();
  for (std::uint64_t v = 0; v < universe; ++v) {
    if (skip != excluded.end() && *skip == v) {
      ++skip;
    } else {
      members.push_back(v);
    }
  }
  return TargetSet(n, std::move(members), provenance);
}

Profile distance_profile(const TargetSet& targets, Vertex x) {
  Profile out = Profile::Zero(targets.dimension() + 1);
  for (auto y : targets.members()) ++out[std::popcount(x.bits ^ y)];
  return out;
}

VolumeStats volume_stats_exact(const TargetSet& targets) {
  const int n = targets.dimension();
  if (n > kExactVolumeMaxDim) {
    throw ResourceError("volume_stats_exact: n=" + std::to_string(n) +
                            " beyond exact budget (n <= " +
                            std::to_string(kExactVolumeMaxDim) + ")",
                        double(n) * n * std::ldexp(1.0, n));
  }
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::int64_t> spectrum(size, 0);
  for (auto y : targets.members()) spectrum[y] = 1;
  walsh_hadamard(spectrum);

  std::vector<int> weight_of(size);
  for (std::size_t u = 0; u < size; ++u) weight_of[u] = std::popcount(u);

  VolumeStats out = empty_stats(n);
  std::vector<std::int64_t> work(size), ball(size, 0);
  std::vector<std::int64_t> kernel(n + 1);
  for (int k = 0; k <= n; ++k) {
    for (int w = 0; w <= n; ++w) kernel[w] = krawtchouk(n, k, w);
    for (std::size_t u = 0; u < size; ++u) {
      work[u] = spectrum[u] * kernel[weight_of[u]];
    }
    walsh_hadamard(work);
    std::int64_t sphere_max = 0, ball_max = 0;
    for (std::size_t x = 0; x < size; ++x) {
      const std::int64_t count = work[x] >> n;  // exact division by 2^n
      ball[x] += count;
      sphere_max = std::max(sphere_max, count);
      ball_max = std::max(ball_max, ball[x]);
    }
    out.sphere[k] = sphere_max;
    out.ball[k] = ball_max;
  }
  return out;
}

VolumeStats volume_stats_sampled(const TargetSet& targets, std::uint64_t extra,
                                 std::uint64_t seed) {
  const int n = targets.dimension();
  VolumeStats out = empty_stats(n);
  out.is_lower_bound = true;
  Profile scratch(n + 1);
  for (auto centre : targets.members()) accumulate_centre(targets, centre, out, scratch);
  if (n < 64 && extra >= (std::uint64_t{1} << n)) {
    for (std::uint64_t centre = 0; centre < (std::uint64_t{1} << n); ++centre) {
      accumulate_centre(targets, centre, out, scratch);
    }
    return out;
  }
  SplitMix64 rng(derive_seed(seed, 0x43454e54ull));
  const std::uint64_t mask = dimension_mask(n);
  for (std::uint64_t i = 0; i < extra; ++i) {
    accumulate_centre(targets, rng() & mask, out, scratch);
  }
  return out;
}

VolumeStats volume_stats_brute_force(const TargetSet& targets) {
  const int n = targets.dimension();
  if (n > kExactVolumeMaxDim) {
    throw ResourceError("volume_stats_brute_force: n too large", std::ldexp(1.0, n));
  }
  VolumeStats out = empty_stats(n);
  Profile scratch(n + 1);
  for (std::uint64_t centre = 0; centre < (std::uint64_t{1} << n); ++centre) {
    accumulate_centre(targets, centre, out, scratch);
  }
  return out;
}

VnMax vn_max(const TargetSet& targets, int k, std::uint64_t sampled_centres,
             std::uint64_t seed) {
  if (k < 0 || k > targets.dimension()) throw DomainError("vn_max: k out of range");
  const VolumeStats stats = sampled_centres == 0
                                ? volume_stats_exact(targets)
                                : volume_stats_sampled(targets, sampled_centres, seed);
  return {stats.sphere[k], stats.is_lower_bound};
}

ConditionVerdicts judge(const ConditionReport& r, const ConditionThresholds& t) {
  ConditionVerdicts v;
  v.size = std::abs(r.size_ratio - 1.0) <= t.size;
  v.xi_gap = r.g.feasible && r.xi_gap <= t.xi_gap;
  v.vsum = r.g.feasible && r.vsum <= t.vsum;
  v.vbig = r.g.feasible && r.vbig_ratio <= t.vbig;
  return v;
}

ConditionReport check_conditions(const TargetSet& targets, double m,
                                  const ConditionThresholds& thresholds,
                                  bool exact_stats, std::uint64_t seed) {
  if (targets.empty()) throw DomainError("check_conditions: empty set");
  if (!(m > 0)) throw DomainError("check_conditions: m must be positive");
  const int n = targets.dimension();
  ConditionReport r;
  r.n = n;
  r.m = m;
  r.set_size = targets.size();
  r.size_ratio = double(targets.size()) * m / std::ldexp(1.0, n);
  r.exact_stats = exact_stats;
  r.thresholds = thresholds;

  const XiTable table(n);
  r.g = find_g(table, m);
  if (r.g.feasible) {
    r.xi_gap = std::exp(r.g.log_xi_at_g + n * std::log(2.0) - std::log(m));
    const VolumeStats stats = exact_stats ? volume_stats_exact(targets)
                                          : volume_stats_sampled(targets, 4096, seed);
    for (int k = 1; k < r.g.g; ++k) r.vsum += double(stats.sphere[k]) * table.value(k);
    r.vbig_ratio = double(stats.ball[r.g.g - 1]) / double(targets.size());
  } else {
    r.xi_gap = std::numeric_limits<double>::infinity();
    r.vsum = std::numeric_limits<double>::infinity();
    r.vbig_ratio = std::numeric_limits<double>::infinity();
  }
  r.verdicts = judge(r, thresholds);
  return r;
}

double cloud_constant(const VolumeStats& stats, int n, double rho, int kmax) {
  double worst = 0;
  for (int k = 1; k <= std::min(kmax, n); ++k) {
    const double f = k == 1 ? n / std::log(1.0 / rho) : double(n);
    const double scale = std::exp(log_binom(n, k)) * rho + f;
    worst = std::max(worst, double(stats.sphere[k]) / scale);
  }
  return worst;
}

std::string to_json(const ConditionReport& r) {
  // Infinite entries (infeasible g) serialize as null.
  auto num = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  nlohmann::json j = {
      {"schema", 1},
      {"n", r.n},
      {"m", num(r.m)},
      {"set_size", r.set_size},
      {"size_ratio", num(r.size_ratio)},
      {"g",
       {{"g", r.g.g},
        {"feasible", r.g.feasible},
        {"m_prime", num(r.g.m_prime)},
        {"xi_at_g", num(r.g.xi_at_g)},
        {"half_gap", num(r.g.half_gap())}}},
      {"xi_gap", num(r.xi_gap)},
      {"vsum", num(r.vsum)},
      {"vbig_ratio", num(r.vbig_ratio)},
      {"exact_stats", r.exact_stats},
      {"thresholds",
       {{"size", r.thresholds.size},
        {"xi_gap", r.thresholds.xi_gap},
        {"vsum", r.thresholds.vsum},
        {"vbig", r.thresholds.vbig}}},
      {"verdicts",
       {{"size", r.verdicts.size},
        {"xi_gap", r.verdicts.xi_gap},
        {"vsum", r.verdicts.vsum},
        {"vbig", r.verdicts.vbig},
        {"all", r.verdicts.all()}}},
  };
  return j.dump();
}

}  // namespace hyperhit
