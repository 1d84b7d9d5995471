// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#include "hyperhit/rem_aging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <boost/math/special_functions/beta.hpp>

#include "hyperhit/errors.hpp"
#include "hyperhit/rng.hpp"

namespace hyperhit {
namespace {

// The walk and its clock, advanced one jump at a time.
class ClockWalker {
 public:
  ClockWalker(const REMConfig& cfg, const EnergyField& field, std::uint64_t seed)
      : n_(cfg.n), scale_(cfg.beta * std::sqrt(double(cfg.n))), field_(field),
        rng_(seed) {}

  std::uint64_t position() const { return position_; }
  double time() const { return time_; }

  /// Holding time at the current site; advances the clock past it.
  double hold() {
    const double weight = std::exp(scale_ * field_(position_));
    const double duration = holding_(rng_) * weight;
    time_ += duration;
    return duration;
  }

  void jump() {
    position_ ^= std::uint64_t{1} << uniform_below(rng_, static_cast<std::uint32_t>(n_));
  }

 private:
  int n_;
  double scale_;
  const EnergyField& field_;
  SplitMix64 rng_;
  std::exponential_distribution<double> holding_{1.0};
  std::uint64_t position_ = 0;
  double time_ = 0;
};

struct PairOutcome {
  std::vector<char> same;  // per theta
  bool exhausted = false;
};

PairOutcome run_pair(const REMConfig& cfg, std::span<const double> thetas,
                     const EnergyField& field, std::uint64_t walk_seed,
                     std::uint64_t max_steps) {
  const double tw = cfg.waiting_time();
  PairOutcome out;
  out.same.assign(thetas.size(), 0);

  // Query times in increasing order: t_w first, then (1+theta) t_w.
  std::vector<std::size_t> order(thetas.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return thetas[a] < thetas[b]; });

  ClockWalker walker(cfg, field, walk_seed);
  bool have_tw = false;
  std::uint64_t at_tw = 0;
  std::size_t next = 0;
  for (std::uint64_t k = 0; k < max_steps; ++k) {
    walker.hold();
    const double end = walker.time();
    // X(t) = Y(k) until the clock reaches `end`.
    if (!have_tw && tw < end) {
      have_tw = true;
      at_tw = walker.position();
    }
    while (have_tw && next < order.size() && (1 + thetas[order[next]]) * tw < end) {
      out.same[order[next]] = walker.position() == at_tw;
      ++next;
    }
    if (next == order.size()) return out;
    walker.jump();
  }
  out.exhausted = true;
  return out;
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0;
  return std::accumulate(values.begin(), values.end(), 0.0) / double(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) return 0;
  const double mu = mean(values);
  double acc = 0;
  for (double v : values) acc += (v - mu) * (v - mu);
  return std::sqrt(acc / double(values.size() - 1));
}

}  // namespace

REMConfig REMConfig::from_ratio(int n, double alpha, double ratio, double theta) {
  if (!(alpha > 0 && alpha < 1)) throw DomainError("alpha must lie in (0, 1)");
  return {n, ratio * beta_c() / alpha, alpha, theta};
}

double REMConfig::beta_c() { return std::sqrt(2 * std::numbers::ln2); }

double REMConfig::waiting_time() const {
  const double ab = alpha * beta;
  return std::pow(ab * std::sqrt(2 * std::numbers::pi * n), -1 / alpha) *
         std::exp(alpha * beta * beta * n);
}

double REMConfig::step_scale() const {
  return std::exp(alpha * alpha * beta * beta * n / 2);
}

bool REMConfig::regime_valid() const {
  return alpha * beta > 0 && alpha * beta < beta_c();
}

double EnergyField::operator()(std::uint64_t x) const {
  if (zero_) return 0.0;
  SplitMix64 rng(derive_seed(seed_, x));
  std::normal_distribution<double> normal;
  return normal(rng);
}

ClockTrajectory clock_process(const REMConfig& cfg, std::uint64_t steps,
                              const EnergyField& field, std::uint64_t walk_seed) {
  if (steps < 1) throw DomainError("clock_process: need at least one step");
  if (cfg.n < 1 || cfg.n > kMaxDimension) throw DomainError("clock_process: bad n");
  ClockTrajectory out;
  out.jump_times.reserve(steps + 1);
  out.walk.reserve(steps + 1);
  ClockWalker walker(cfg, field, walk_seed);
  out.jump_times.push_back(0);
  out.walk.push_back(walker.position());
  for (std::uint64_t k = 0; k < steps; ++k) {
    out.energies.emplace(walker.position(), field(walker.position()));
    walker.hold();
    walker.jump();
    out.jump_times.push_back(walker.time());
    out.walk.push_back(walker.position());
  }
  return out;
}

Vertex position_at(const ClockTrajectory& trajectory, double t) {
  const auto& s = trajectory.jump_times;
  if (!(t >= 0) || t > s.back()) {
    throw DomainError("position_at: t outside the simulated horizon [0, S(K)]");
  }
  const auto it = std::upper_bound(s.begin(), s.end(), t);
  return Vertex{trajectory.walk[static_cast<std::size_t>(it - s.begin()) - 1]};
}

std::vector<AgingEstimate> two_point(const REMConfig& cfg,
                                     std::span<const double> thetas,
                                     const TwoPointOptions& options) {
  if (thetas.empty()) throw DomainError("two_point: no theta values");
  for (double theta : thetas) {
    if (!(theta > 0)) throw DomainError("two_point: theta must be positive");
  }
  if (options.disorder == 0 || options.walks == 0) {
    throw DomainError("two_point: need at least one disorder and one walk");
  }
  const std::size_t count = thetas.size();
  const auto disorder = static_cast<std::int64_t>(options.disorder);

  // Per disorder: hits per theta and usable walks.
  std::vector<std::vector<double>> hits(options.disorder, std::vector<double>(count, 0));
  std::vector<std::uint64_t> usable(options.disorder, 0);

#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t d = 0; d < disorder; ++d) {
    const auto du = static_cast<std::uint64_t>(d);
    const EnergyField field(derive_seed(options.seed, 1, options.quenched ? 0 : du));
    for (std::uint64_t w = 0; w < options.walks; ++w) {
      const PairOutcome pair =
          run_pair(cfg, thetas, field,
                   derive_seed(options.seed, 2, du * options.walks + w),
                   options.max_steps);
      if (pair.exhausted) continue;
      ++usable[d];
      for (std::size_t i = 0; i < count; ++i) hits[d][i] += pair.same[i];
    }
  }

  const double trials = double(options.disorder * options.walks);
  const double used = double(std::accumulate(usable.begin(), usable.end(), std::uint64_t{0}));
  std::vector<AgingEstimate> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    AgingEstimate& e = out[i];
    e.theta = thetas[i];
    e.target = asl(cfg.alpha, 1 / (1 + thetas[i]));
    e.exhausted_fraction = 1 - used / trials;
    e.flagged = e.exhausted_fraction > 0.05;
    std::vector<double> means;
    double total = 0;
    for (std::uint64_t d = 0; d < options.disorder; ++d) {
      total += hits[d][i];
      if (usable[d]) means.push_back(hits[d][i] / double(usable[d]));
    }
    e.estimate = used > 0 ? total / used : 0;
    e.disorder_spread = sample_sd(means);
    if (options.quenched || means.size() < 2) {
      e.stderr_ = used > 0 ? std::sqrt(e.estimate * (1 - e.estimate) / used) : 0;
    } else {
      e.stderr_ = e.disorder_spread / std::sqrt(double(means.size()));
    }
  }
  return out;
}

std::vector<double> clock_tail_samples(const REMConfig& cfg, std::uint64_t pairs,
                                       std::uint64_t seed) {
  const auto steps = static_cast<std::uint64_t>(std::floor(cfg.step_scale()));
  if (steps < 1) throw DomainError("clock_tail_samples: r(n) < 1");
  const double tw = cfg.waiting_time();
  std::vector<double> out(pairs);
  const auto count = static_cast<std::int64_t>(pairs);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < count; ++p) {
    const auto pu = static_cast<std::uint64_t>(p);
    const EnergyField field(derive_seed(seed, 1, pu));
    ClockWalker walker(cfg, field, derive_seed(seed, 2, pu));
    for (std::uint64_t k = 0; k < steps; ++k) {
      walker.hold();
      walker.jump();
    }
    out[p] = walker.time() / tw;
  }
  return out;
}

double tail_log_slope(std::span<const double> samples, double u_low,
                      double u_high, int points) {
  if (samples.empty() || !(u_low > 0) || !(u_high > u_low) || points < 2) {
    throw DomainError("tail_log_slope: bad arguments");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> xs, ys;
  for (int i = 0; i < points; ++i) {
    const double u = u_low * std::pow(u_high / u_low, double(i) / (points - 1));
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), u);
    if (above == 0) continue;
    xs.push_back(std::log(u));
    ys.push_back(std::log(double(above) / double(sorted.size())));
  }
  if (xs.size() < 2) throw DomainError("tail_log_slope: empty tail in range");
  const double mx = mean(xs), my = mean(ys);
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

double asl(double alpha, double z) {
  if (!(alpha > 0 && alpha < 1)) throw DomainError("asl: alpha must lie in (0, 1)");
  if (!(z >= 0 && z <= 1)) throw DomainError("asl: z must lie in [0, 1]");
  if (z == 0) return 0;
  if (z == 1) return 1;
  return boost::math::ibeta(alpha, 1 - alpha, z);
}

}  // namespace hyperhit
