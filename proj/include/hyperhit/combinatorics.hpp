// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <optional>
#include <vector>

namespace hyperhit {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Largest n for which XiTable also carries exact rational values.
inline constexpr int kXiExactCutoff = 30;

/// ln Gamma(x) for x > 0, reentrant.
double log_gamma(double x);
long double log_gamma(long double x);

/// C(n, k) exactly. Throws DomainError when k > n.
BigInt binom_exact(int n, int k);

/// ln C(n, k). Uses a product of ratios for small min(k, n-k) and log-gamma
/// otherwise, so the relative error stays near machine precision.
double log_binom(int n, int k);

/// The hitting correction
///
///   xi_n(k) = 2^{-n} (n/2) C(n,k)^{-1} sum_{j=1}^{n-k} C(n,k+j) / j,
///
/// evaluated with log-sum-exp. `log_xi` returns -inf at k = n.
double log_xi(int n, int k);
double xi(int n, int k);

/// xi_n(k) as an exact rational, straight from the defining sum.
Rational xi_exact(int n, int k);

/// xi_n(k) from the rearranged sum
///
///   2^{-n} (n/2) sum_{j=1}^{n-k} C(n-k,j) C(k+j,j)^{-1} / j,
///
/// in which monotonicity in k is visible term by term.
Rational xi_second_form(int n, int k);

/// xi_n(0..n) for one dimension. Stored as logarithms because 2^{-n}
/// underflows double for n > 1074; natural-scale accessors may return 0.
class XiTable {
 public:
  explicit XiTable(int n);

  int dimension() const { return n_; }

  double log_value(int k) const { return log_values_[k]; }
  double value(int k) const;
  const Eigen::ArrayXd& log_values() const { return log_values_; }

  /// ln(xi_n(k) * C(n,k)); tends to 0 for fixed k as n grows.
  double log_value_times_binom(int k) const;

  bool has_exact() const { return exact_.has_value(); }
  /// Requires has_exact().
  const Rational& exact(int k) const { return (*exact_)[k]; }

 private:
  int n_;
  Eigen::ArrayXd log_values_;
  std::optional<std::vector<Rational>> exact_;
};

/// Result of the threshold search: g is the smallest k in [1, n/2] with
/// xi_n(k) <= 2^{-n} m'.
struct GThreshold {
  int n = 0;
  double m = 0;
  double m_prime = 0;
  int g = 0;
  double xi_at_g = 0;
  double log_xi_at_g = 0;
  bool feasible = false;

  /// n/2 - g, reported as a finite-n proxy for the required margin.
  double half_gap() const { return n / 2.0 - g; }
};

/// m' = sqrt(m * n ln n), the geometric mean of the two scales it must
/// separate.
double geometric_m_prime(int n, double m);

GThreshold find_g(const XiTable& table, double m);
GThreshold find_g(int n, double m);

/// Gaussian approximation of C(n, n/2 + i):
/// sqrt(2/pi) n^{-1/2} 2^n exp(-2 i^2 / n). Natural scale overflows for
/// n > ~1020; use the log form for large n.
double log_binom_gaussian_approx(int n, double i);
double binom_gaussian_approx(int n, double i);

struct GaussianBinomialCheck {
  int n = 0;
  int k = 0;
  double offset = 0;  // k - n/2
  double ratio = 0;   // approx / exact
  bool in_regime = false;
};

/// Compares the Gaussian approximation with C(n, k). `in_regime` is false
/// once |k - n/2| exceeds n^{7/12}; the ratio is reported but meaningless
/// there.
GaussianBinomialCheck binom_gaussian_check(int n, int k);

/// sup_k xi_n(k) C(n,k) / (sqrt(n) ln n) over k = 1..n. The upper bound on xi
/// has an unspecified constant, so this ratio is what gets reported.
double xi_upper_ratio(const XiTable& table);

}  // namespace hyperhit
