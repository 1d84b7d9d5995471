// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperhit/combinatorics.hpp"
#include "hyperhit/errors.hpp"
#include "hyperhit/target_set.hpp"
#include "hyperhit/vertex.hpp"

namespace hyperhit {

/// Cap on (states x steps) for one survival iteration.
inline constexpr double kSurvivalBudget = 1e8;

/// Largest dimension the full 2^n-state iterations accept.
inline constexpr int kFullCubeMaxDim = 20;

/// Start distance k, Laplace parameter s and time scale m, together with the
/// two derived parameterizations eps = (n/2)(e^{s/m} - 1) and
/// lambda = e^{-s/m}.
template <typename Scalar = double>
struct LaplaceQuery {
  int n = 0;
  int k = 0;
  Scalar s = 0;
  Scalar m = 0;
  Scalar epsilon = 0;
  Scalar lambda = 0;

  static LaplaceQuery make(int n, int k, Scalar s, Scalar m) {
    using std::exp;
    using std::expm1;
    if (n < 1 || k < 0 || k > n) {
      throw DomainError("LaplaceQuery: need n >= 1 and 0 <= k <= n");
    }
    if (!(s > 0)) throw DomainError("LaplaceQuery: s must be positive");
    if (!(m > 0)) throw DomainError("LaplaceQuery: m must be positive");
    const Scalar rate = s / m;
    return {n, k, s, m, Scalar(n) / 2 * expm1(rate), exp(-rate)};
  }
};

namespace detail {

template <typename Scalar>
Scalar log_sum_exp(const std::vector<Scalar>& terms) {
  using std::exp;
  using std::log;
  Scalar top = terms.front();
  for (auto t : terms) top = t > top ? t : top;
  Scalar sum = 0;
  for (auto t : terms) sum += exp(t - top);
  return top + log(sum);
}

// ln sum_{j=0}^{n-k} C(n-k,j) Gamma(1+k) Gamma(j+eps) / Gamma(1+k+j+eps).
template <typename Scalar>
Scalar log_gamma_sum(int n, int k, Scalar eps) {
  std::vector<Scalar> terms;
  terms.reserve(n - k + 1);
  const Scalar log_k_factorial = log_gamma(Scalar(k) + 1);
  for (int j = 0; j <= n - k; ++j) {
    terms.push_back(Scalar(log_binom(n - k, j)) + log_k_factorial +
                    log_gamma(Scalar(j) + eps) -
                    log_gamma(Scalar(1 + k + j) + eps));
  }
  return log_sum_exp(terms);
}

}  // namespace detail

/// E_{z_k} exp(-(s/m) H(0)) from the Fourier formula with its alternating
/// inner sums collapsed to Beta integrals: a ratio of two sums of positive
/// Gamma-function terms, each accumulated in log space. The common factor
/// n e^{s/m} / 2 cancels and is omitted.
template <typename Scalar>
Scalar laplace_formula(const LaplaceQuery<Scalar>& q) {
  using std::exp;
  if (q.k == 0) return Scalar(1);
  return exp(detail::log_gamma_sum(q.n, q.k, q.epsilon) -
             detail::log_gamma_sum(q.n, 0, q.epsilon));
}

inline double laplace_formula(int n, int k, double s, double m) {
  return laplace_formula(LaplaceQuery<double>::make(n, k, s, m));
}

/// sum_{i=0}^{k} (-1)^i C(k,i) / (1 - lambda (1 - 2(i+j)/n)), exactly.
/// Requires lambda in (0,1) and k + j <= n.
Rational laplace_alternating_exact(int n, int k, int j, const Rational& lambda);

/// (n / (2 lambda)) k! / prod_{t=0}^{k} (j + eps + t) with
/// eps = (n/2)(1/lambda - 1): the Beta-integral closed form of the
/// alternating sum above.
Rational laplace_beta_product_exact(int n, int k, int j, const Rational& lambda);

/// Distance-to-target process of the walk (Ehrenfest urn): from d the chain
/// moves to d-1 with probability d/n and to d+1 with probability (n-d)/n.
struct LumpedChain {
  int n = 0;

  double up(int d) const { return double(n - d) / n; }
  double down(int d) const { return double(d) / n; }
};

/// phi(k) = E_k lambda^{H(0)} for the lumped chain, lambda = e^{-s/m}, from
/// the tridiagonal system phi(0) = 1,
/// phi(d) = lambda [(d/n) phi(d-1) + ((n-d)/n) phi(d+1)], phi(n) = lambda
/// phi(n-1). The matrix is an M-matrix, so elimination involves no
/// cancellation and the result is accurate componentwise.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> lumped_laplace_all(int n, Scalar s,
                                                           Scalar m) {
  using std::exp;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (n < 1) throw DomainError("lumped_laplace: n must be positive");
  if (!(s > 0)) throw DomainError("lumped_laplace: s must be positive");
  if (!(m > 0)) throw DomainError("lumped_laplace: m must be positive");
  const Scalar lambda = exp(-s / m);

  // Unknowns phi(1..n): sub[d] phi(d-1) + phi(d) + super[d] phi(d+1) = rhs[d].
  Vec sub = Vec::Zero(n + 1), super = Vec::Zero(n + 1), rhs = Vec::Zero(n + 1);
  for (int d = 1; d < n; ++d) {
    sub[d] = -lambda * Scalar(d) / Scalar(n);
    super[d] = -lambda * Scalar(n - d) / Scalar(n);
  }
  sub[n] = -lambda;
  rhs[1] = -sub[1];  // phi(0) = 1 moved to the right-hand side
  sub[1] = 0;

  Vec diag = Vec::Ones(n + 1);
  for (int d = 2; d <= n; ++d) {
    const Scalar factor = sub[d] / diag[d - 1];
    diag[d] -= factor * super[d - 1];
    rhs[d] -= factor * rhs[d - 1];
  }
  Vec phi(n + 1);
  phi[0] = 1;
  phi[n] = rhs[n] / diag[n];
  for (int d = n - 1; d >= 1; --d) {
    phi[d] = (rhs[d] - super[d] * phi[d + 1]) / diag[d];
  }
  return phi;
}

template <typename Scalar = double>
Scalar lumped_laplace(int n, int k, Scalar s, Scalar m) {
  if (k < 0 || k > n) throw DomainError("lumped_laplace: need 0 <= k <= n");
  return lumped_laplace_all<Scalar>(n, s, m)[k];
}

/// P[H >= t] for t = 0..T.
struct SurvivalTable {
  std::uint64_t start = 0;  // vertex bits, or lumped distance
  int horizon = 0;
  Eigen::VectorXd survival;

  double at(int t) const { return survival[t]; }
};

/// Exact P_{z_k}[H(0) >= t], t <= T, by forward iteration of the (n+1)-state
/// lumped chain with state 0 absorbing.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> lumped_survival_curve(int n, int k,
                                                              int horizon) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (n < 1 || k < 0 || k > n) {
    throw DomainError("lumped_survival: need n >= 1 and 0 <= k <= n");
  }
  if (horizon < 0) throw DomainError("lumped_survival: negative horizon");
  const double work = double(n + 1) * horizon;
  if (work > kSurvivalBudget) {
    throw ResourceError("lumped_survival: horizon " + std::to_string(horizon) +
                            " needs " + std::to_string(work) +
                            " state updates",
                        work);
  }
  Vec out(horizon + 1);
  out[0] = 1;
  if (horizon == 0) return out;
  if (k == 0) {
    out.tail(horizon).setZero();
    return out;
  }
  // mass[d] for d = 1..n; index 0 collects nothing (absorbed).
  Vec mass = Vec::Zero(n + 2), next(n + 2);
  mass[k] = 1;
  out[1] = 1;
  for (int t = 2; t <= horizon; ++t) {
    next.setZero();
    for (int d = 1; d <= n; ++d) {
      const Scalar p = mass[d];
      if (p == 0) continue;
      if (d > 1) next[d - 1] += p * Scalar(d) / Scalar(n);
      if (d < n) next[d + 1] += p * Scalar(n - d) / Scalar(n);
    }
    mass.swap(next);
    out[t] = mass.sum();
  }
  return out;
}

SurvivalTable lumped_survival(int n, int k, int horizon);

/// p_n(a, k) = P_{z_k}[H(0) < a m].
double p_single(int n, int k, double a, double m);

/// Exact P_x[H(B \ x) >= t], t <= T, by iterating the walk's transition
/// operator on all 2^n vertices with B \ x absorbing. If B \ x is empty the
/// table is identically 1.
SurvivalTable full_survival(const TargetSet& targets, Vertex x, int horizon);

/// P_x[H(B \ x) >= t] for every start x and each requested t, in one backward
/// sweep per distinct effective target (one for x outside B, one per member
/// of B). Rows are vertices, columns follow `times`.
Eigen::MatrixXd survival_all_starts(const TargetSet& targets,
                                    std::span<const int> times);

/// sum over ordered tuples of distinct y_1..y_i in B \ x of
/// P_x[H(y_1) < a m, ..., H(y_i) < a m], i in {1,2,3}, n <= 12. Each tuple
/// is a dynamic program over (vertex, subset of the tuple already hit); the
/// probability is symmetric in the tuple order, so unordered sets are run
/// once and weighted by i!.
double inclusion_exclusion_sum(const TargetSet& targets, Vertex x, int i,
                               double a, double m);

/// P_x[all of `points` visited at some time 1..steps] by the same dynamic
/// program. `points` must not contain x and has at most 3 entries.
double prob_all_hit(int n, Vertex x, std::span<const std::uint64_t> points,
                    int steps);

/// Number of steps t with t < a m, i.e. ceil(a m); H < a m iff H <= T - 1.
int steps_below(double a, double m);

}  // namespace hyperhit
