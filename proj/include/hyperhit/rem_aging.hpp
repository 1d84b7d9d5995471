// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hyperhit/vertex.hpp"

namespace hyperhit {

/// Random Hopping Time dynamics of the REM on {0,1}^n.
///
/// Clock convention: the process leaves x at rate exp(-beta sqrt(n) E_x)
/// per neighbour, but the jump clock is taken literally as
/// S(k) = sum_{i<k} e_i exp(beta sqrt(n) E_{Y(i)}) with mean-one e_i, i.e.
/// the factor 1/n from the n neighbours is absorbed into the time unit. t_w
/// is measured on the same clock.
struct REMConfig {
  int n = 0;
  double beta = 0;
  double alpha = 0.5;
  double theta = 1.0;

  /// beta from the ratio alpha*beta/beta_c.
  static REMConfig from_ratio(int n, double alpha, double ratio, double theta);

  static double beta_c();
  /// (alpha beta sqrt(2 pi n))^{-1/alpha} exp(alpha beta^2 n)
  double waiting_time() const;
  /// exp(alpha^2 beta^2 n / 2)
  double step_scale() const;
  /// 0 < alpha beta < beta_c
  bool regime_valid() const;
};

/// Quenched i.i.d. standard normal energies, drawn per vertex from the
/// stream derive_seed(seed, x): any vertex's energy is fixed by the
/// disorder seed alone, independent of visiting order.
class EnergyField {
 public:
  explicit EnergyField(std::uint64_t seed, bool zero = false)
      : seed_(seed), zero_(zero) {}

  double operator()(std::uint64_t x) const;

 private:
  std::uint64_t seed_;
  bool zero_;
};

struct ClockTrajectory {
  std::map<std::uint64_t, double> energies;  // visited sites only
  std::vector<double> jump_times;            // S(0..K), S(0) = 0
  std::vector<std::uint64_t> walk;           // Y(0..K)
};

/// K steps of the walk from the origin with the clock S. Walk and holding
/// times use `walk_seed`; energies come from `field`.
ClockTrajectory clock_process(const REMConfig& cfg, std::uint64_t steps,
                              const EnergyField& field, std::uint64_t walk_seed);

/// X(t) = Y(max{k : S(k) <= t}). Throws DomainError for t beyond S(K) or
/// negative t.
Vertex position_at(const ClockTrajectory& trajectory, double t);

struct AgingEstimate {
  double theta = 0;
  double estimate = 0;
  double stderr_ = 0;
  double disorder_spread = 0;  // sd of per-disorder means
  double target = 0;           // Asl_alpha(1 / (1 + theta))
  double exhausted_fraction = 0;
  bool flagged = false;  // more than 5% of trials ran out of steps
};

struct TwoPointOptions {
  std::uint64_t disorder = 1000;
  std::uint64_t walks = 1;
  std::uint64_t seed = 0;
  bool quenched = false;  // one disorder realization shared by all trials
  std::uint64_t max_steps = 1ull << 26;
};

/// R_n(t_w, (1+theta) t_w) = P[X((1+theta) t_w) = X(t_w)] by Monte Carlo,
/// averaged over disorder and walks, for each theta. One trajectory per
/// (disorder, walk) pair serves every theta. Disorder d uses energies from
/// derive_seed(seed, 1, d) and walk w from derive_seed(seed, 2, d * walks +
/// w), so results do not depend on thread count.
std::vector<AgingEstimate> two_point(const REMConfig& cfg,
                                     std::span<const double> thetas,
                                     const TwoPointOptions& options);

/// Samples of S(floor(r(n))) / t_w(n), one per (disorder, walk) pair.
std::vector<double> clock_tail_samples(const REMConfig& cfg, std::uint64_t pairs,
                                       std::uint64_t seed);

/// Least-squares slope of ln P[sample > u] against ln u on `points` log-spaced
/// u in [u_low, u_high].
double tail_log_slope(std::span<const double> samples, double u_low,
                      double u_high, int points = 11);

/// Generalised arcsine law: I_z(alpha, 1 - alpha), the CDF of the density
/// (sin(alpha pi)/pi) u^{alpha-1} (1-u)^{-alpha} on [0,1].
double asl(double alpha, double z);

}  // namespace hyperhit
