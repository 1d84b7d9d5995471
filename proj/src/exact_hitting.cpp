// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#include "hyperhit/exact_hitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hyperhit {
namespace {

void require_lambda(const Rational& lambda) {
  if (lambda <= 0 || lambda >= 1) {
    throw DomainError("lambda must lie in (0, 1)");
  }
}

void require_full_cube(int n, const char* op) {
  if (n > kFullCubeMaxDim) {
    throw ResourceError(std::string(op) + ": n=" + std::to_string(n) +
                            " needs " + std::to_string(std::ldexp(8.0, n)) +
                            " bytes per vector (limit n <= " +
                            std::to_string(kFullCubeMaxDim) + ")",
                        std::ldexp(8.0, n));
  }
}

void require_budget(double states, int horizon, const char* op) {
  const double work = states * horizon;
  if (work > kSurvivalBudget) {
    throw ResourceError(std::string(op) + ": " + std::to_string(work) +
                            " state updates exceed the budget of " +
                            std::to_string(kSurvivalBudget),
                        work);
  }
}

// Absorbing mask: 1 for vertices in `targets` other than `exclude`.
std::vector<char> absorbing_mask(const TargetSet& targets,
                                 const std::uint64_t* exclude) {
  std::vector<char> mask(std::size_t{1} << targets.dimension(), 0);
  for (auto bits : targets.members()) {
    if (exclude == nullptr || bits != *exclude) mask[bits] = 1;
  }
  return mask;
}

// out[y] = (1/n) sum_i in[y ^ e_i]
void average_neighbours(int n, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  const std::size_t size = in.size();
  const double inv_n = 1.0 / n;
  for (std::size_t y = 0; y < size; ++y) {
    double acc = 0;
    for (int i = 0; i < n; ++i) acc += in[y ^ (std::size_t{1} << i)];
    out[y] = acc * inv_n;
  }
}

}  // namespace

int steps_below(double a, double m) {
  if (!(a >= 0) || !(m > 0)) throw DomainError("need a >= 0 and m > 0");
  const double t = std::ceil(a * m);
  if (t > 2e9) throw ResourceError("horizon a*m too large", t);
  return static_cast<int>(t);
}

Rational laplace_alternating_exact(int n, int k, int j, const Rational& lambda) {
  if (n < 1 || k < 0 || j < 0 || k + j > n) {
    throw DomainError("laplace_alternating_exact: need k, j >= 0, k + j <= n");
  }
  require_lambda(lambda);
  Rational sum = 0;
  for (int i = 0; i <= k; ++i) {
    Rational denom = 1 - lambda * (1 - Rational(2 * (i + j), n));
    if (denom == 0) {
      throw DomainError("laplace_alternating_exact: vanishing denominator at i=" +
                        std::to_string(i));
    }
    Rational term = Rational(binom_exact(k, i)) / denom;
    if (i % 2) sum -= term; else sum += term;
  }
  sum.canonicalize();
  return sum;
}

Rational laplace_beta_product_exact(int n, int k, int j, const Rational& lambda) {
  if (n < 1 || k < 0 || j < 0 || k + j > n) {
    throw DomainError("laplace_beta_product_exact: need k, j >= 0, k + j <= n");
  }
  require_lambda(lambda);
  const Rational eps = Rational(n, 2) * (1 / lambda - 1);
  Rational product = 1;
  for (int t = 0; t <= k; ++t) product *= j + eps + t;
  BigInt factorial;
  mpz_fac_ui(factorial.get_mpz_t(), static_cast<unsigned long>(k));
  Rational out = Rational(n) / (2 * lambda) * Rational(factorial) / product;
  out.canonicalize();
  return out;
}

SurvivalTable lumped_survival(int n, int k, int horizon) {
  return {static_cast<std::uint64_t>(k), horizon,
          lumped_survival_curve<double>(n, k, horizon)};
}

double p_single(int n, int k, double a, double m) {
  const int steps = steps_below(a, m);
  return 1.0 - lumped_survival_curve<double>(n, k, steps)[steps];
}

SurvivalTable full_survival(const TargetSet& targets, Vertex x, int horizon) {
  const int n = targets.dimension();
  require_full_cube(n, "full_survival");
  if (horizon < 0) throw DomainError("full_survival: negative horizon");
  if ((x.bits & ~dimension_mask(n)) != 0) {
    throw DomainError("full_survival: start vertex outside the cube");
  }
  const std::size_t size = std::size_t{1} << n;
  require_budget(double(size), horizon, "full_survival");

  SurvivalTable out{x.bits, horizon, Eigen::VectorXd::Ones(horizon + 1)};
  const TargetSet effective = targets.without(x);
  if (effective.empty() || horizon <= 1) return out;

  const std::vector<char> absorbing = absorbing_mask(effective, nullptr);
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(size), next(size);
  mass[x.bits] = 1;
  // survival[t] = P[H >= t] = mass remaining after t - 1 steps.
  for (int t = 2; t <= horizon; ++t) {
    average_neighbours(n, mass, next);
    for (std::size_t y = 0; y < size; ++y) {
      if (absorbing[y]) next[y] = 0;
    }
    mass.swap(next);
    out.survival[t] = mass.sum();
  }
  return out;
}

namespace {

// Backward sweep: f_t(y) = P_y[H(T) >= t] for y outside T. Fills the columns
// of `out` (rows selected by `rows`, or all rows when rows is empty).
void backward_sweep(int n, const std::vector<char>& absorbing,
                    std::span<const int> times, Eigen::MatrixXd& out,
                    const std::uint64_t* only_row) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<int> order(times.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return times[a] < times[b]; });

  Eigen::VectorXd f = Eigen::VectorXd::Ones(size), next(size);
  int t = 0;
  for (int col : order) {
    while (t < times[col]) {
      average_neighbours(n, f, next);
      for (std::size_t y = 0; y < size; ++y) {
        if (absorbing[y]) next[y] = 0;
      }
      f.swap(next);
      ++t;
    }
    if (only_row) {
      out(static_cast<Eigen::Index>(*only_row), col) = f[*only_row];
    } else {
      out.col(col) = f;
    }
  }
}

}  // namespace

Eigen::MatrixXd survival_all_starts(const TargetSet& targets,
                                    std::span<const int> times) {
  const int n = targets.dimension();
  require_full_cube(n, "survival_all_starts");
  const std::size_t size = std::size_t{1} << n;
  const int horizon =
      times.empty() ? 0 : *std::max_element(times.begin(), times.end());
  for (int t : times) {
    if (t < 0) throw DomainError("survival_all_starts: negative time");
  }
  require_budget(double(size), horizon, "survival_all_starts");

  Eigen::MatrixXd out(size, times.size());
  backward_sweep(n, absorbing_mask(targets, nullptr), times, out, nullptr);
  // Starts inside B see B minus themselves; time 0 is always 1.
  for (auto bits : targets.members()) {
    backward_sweep(n, absorbing_mask(targets, &bits), times, out, &bits);
  }
  return out;
}

double prob_all_hit(int n, Vertex x, std::span<const std::uint64_t> points,
                    int steps) {
  require_full_cube(n, "prob_all_hit");
  const int count = static_cast<int>(points.size());
  if (count < 1 || count > 3) {
    throw DomainError("prob_all_hit: between 1 and 3 points");
  }
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::uint8_t> hit_bit(size, 0);
  for (int j = 0; j < count; ++j) {
    if (points[j] == x.bits) throw DomainError("prob_all_hit: point equals x");
    hit_bit[points[j]] |= std::uint8_t(1u << j);
  }
  if (steps <= 0) return 0.0;
  const unsigned full = (1u << count) - 1;
  require_budget(double(size) * full, steps, "prob_all_hit");

  // layers[mask] holds the mass that has visited exactly `mask` so far;
  // the full mask is absorbed into `done`.
  std::vector<Eigen::VectorXd> layers(full, Eigen::VectorXd::Zero(size));
  std::vector<Eigen::VectorXd> next(full, Eigen::VectorXd::Zero(size));
  layers[0][x.bits] = 1;
  double done = 0;
  const double inv_n = 1.0 / n;
  for (int t = 0; t < steps; ++t) {
    for (auto& layer : next) layer.setZero();
    for (unsigned mask = 0; mask < full; ++mask) {
      const Eigen::VectorXd& from = layers[mask];
      for (std::size_t v = 0; v < size; ++v) {
        const double p = from[v];
        if (p == 0) continue;
        const double share = p * inv_n;
        for (int i = 0; i < n; ++i) {
          const std::size_t w = v ^ (std::size_t{1} << i);
          const unsigned target_mask = mask | hit_bit[w];
          if (target_mask == full) {
            done += share;
          } else {
            next[target_mask][w] += share;
          }
        }
      }
    }
    layers.swap(next);
  }
  return done;
}

double inclusion_exclusion_sum(const TargetSet& targets, Vertex x, int i,
                               double a, double m) {
  const int n = targets.dimension();
  if (i < 1 || i > 3) {
    throw ResourceError("inclusion_exclusion_sum: i must be 1, 2 or 3",
                        double(i));
  }
  if (n > 12) {
    throw ResourceError("inclusion_exclusion_sum: n must be <= 12",
                        std::ldexp(1.0, n + i));
  }
  const int steps = steps_below(a, m) - 1;  // hits at times 1..ceil(am)-1
  const TargetSet effective = targets.without(x);
  const auto points = effective.members();
  const int count = static_cast<int>(points.size());
  if (steps <= 0 || count < i) return 0.0;

  double factorial = 1;
  for (int j = 2; j <= i; ++j) factorial *= j;

  double total = 0;
  std::uint64_t tuple[3];
  for (int p0 = 0; p0 < count; ++p0) {
    tuple[0] = points[p0];
    if (i == 1) {
      total += prob_all_hit(n, x, {tuple, 1}, steps);
      continue;
    }
    for (int p1 = p0 + 1; p1 < count; ++p1) {
      tuple[1] = points[p1];
      if (i == 2) {
        total += prob_all_hit(n, x, {tuple, 2}, steps);
        continue;
      }
      for (int p2 = p1 + 1; p2 < count; ++p2) {
        tuple[2] = points[p2];
        total += prob_all_hit(n, x, {tuple, 3}, steps);
      }
    }
  }
  return factorial * total;
}

}  // namespace hyperhit
