// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#include "hyperhit/combinatorics.hpp"

#include <math.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hyperhit/errors.hpp"

namespace hyperhit {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_k_le_n(int n, int k, const char* op) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError(std::string(op) + ": need 0 <= k <= n, got n=" +
                      std::to_string(n) + " k=" + std::to_string(k));
  }
}

// ln(exp(a_0) + ... ) for a span of log terms; -inf when empty.
double log_sum_exp(const double* terms, int count) {
  if (count <= 0) return kNegInf;
  const double top = *std::max_element(terms, terms + count);
  if (top == kNegInf) return kNegInf;
  double sum = 0;
  for (int i = 0; i < count; ++i) sum += std::exp(terms[i] - top);
  return top + std::log(sum);
}

Eigen::ArrayXd log_binom_row(int n) {
  Eigen::ArrayXd row(n + 1);
  for (int k = 0; k <= n; ++k) row[k] = log_binom(n, k);
  return row;
}

// log xi_n(k) given ln C(n, .) for the whole row.
double log_xi_from_row(int n, int k, const Eigen::ArrayXd& row,
                       std::vector<double>& scratch) {
  const int count = n - k;
  if (count == 0) return kNegInf;
  scratch.resize(count);
  for (int j = 1; j <= count; ++j) {
    scratch[j - 1] = row[k + j] - std::log(static_cast<double>(j));
  }
  return -n * std::numbers::ln2 + std::log(n / 2.0) - row[k] +
         log_sum_exp(scratch.data(), count);
}

}  // namespace

double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

long double log_gamma(long double x) {
  int sign = 0;
  return ::lgammal_r(x, &sign);
}

BigInt binom_exact(int n, int k) {
  require_k_le_n(n, k, "binom_exact");
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

double log_binom(int n, int k) {
  require_k_le_n(n, k, "log_binom");
  const int small = std::min(k, n - k);
  if (small <= 32) {
    // ln prod_{i=1}^{small} (n - small + i) / i, no cancellation.
    double acc = 0;
    for (int i = 1; i <= small; ++i) {
      acc += std::log(static_cast<double>(n - small + i) / i);
    }
    return acc;
  }
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

double log_xi(int n, int k) {
  require_k_le_n(n, k, "xi");
  if (n == 0) return kNegInf;
  std::vector<double> scratch;
  Eigen::ArrayXd row(n + 1);
  for (int j = k; j <= n; ++j) row[j] = log_binom(n, j);
  return log_xi_from_row(n, k, row, scratch);
}

double xi(int n, int k) { return std::exp(log_xi(n, k)); }

Rational xi_exact(int n, int k) {
  require_k_le_n(n, k, "xi_exact");
  Rational sum = 0;
  for (int j = 1; j <= n - k; ++j) {
    sum += Rational(binom_exact(n, k + j), j);
  }
  BigInt denom = binom_exact(n, k);
  denom <<= static_cast<mp_bitcnt_t>(n);
  Rational out = sum * Rational(n, 2) / Rational(denom);
  out.canonicalize();
  return out;
}

Rational xi_second_form(int n, int k) {
  require_k_le_n(n, k, "xi_second_form");
  Rational sum = 0;
  for (int j = 1; j <= n - k; ++j) {
    BigInt den = binom_exact(k + j, j) * j;
    sum += Rational(binom_exact(n - k, j), den);
  }
  BigInt pow2 = 1;
  pow2 <<= static_cast<mp_bitcnt_t>(n);
  Rational out = sum * Rational(n, 2) / Rational(pow2);
  out.canonicalize();
  return out;
}

XiTable::XiTable(int n) : n_(n), log_values_(n + 1) {
  if (n < 1) throw DomainError("XiTable: n must be positive");
  const Eigen::ArrayXd row = log_binom_row(n);
  std::vector<double> scratch;
  for (int k = 0; k <= n; ++k) {
    log_values_[k] = log_xi_from_row(n, k, row, scratch);
  }
  if (n <= kXiExactCutoff) {
    std::vector<Rational> exact;
    exact.reserve(n + 1);
    for (int k = 0; k <= n; ++k) exact.push_back(xi_exact(n, k));
    exact_ = std::move(exact);
  }
}

double XiTable::value(int k) const { return std::exp(log_values_[k]); }

double XiTable::log_value_times_binom(int k) const {
  return log_values_[k] + log_binom(n_, k);
}

double geometric_m_prime(int n, double m) {
  return std::sqrt(m * n * std::log(static_cast<double>(n)));
}

GThreshold find_g(const XiTable& table, double m) {
  GThreshold out;
  out.n = table.dimension();
  out.m = m;
  out.m_prime = geometric_m_prime(out.n, m);
  if (!(m > 0) || !(out.m_prime > 0)) return out;
  const double log_bound = std::log(out.m_prime) - out.n * std::numbers::ln2;
  for (int k = 1; k <= out.n / 2; ++k) {
    if (table.log_value(k) <= log_bound) {
      out.g = k;
      out.log_xi_at_g = table.log_value(k);
      out.xi_at_g = std::exp(out.log_xi_at_g);
      out.feasible = true;
      break;
    }
  }
  return out;
}

GThreshold find_g(int n, double m) { return find_g(XiTable(n), m); }

double log_binom_gaussian_approx(int n, double i) {
  return 0.5 * std::log(2.0 / std::numbers::pi) - 0.5 * std::log(double(n)) +
         n * std::numbers::ln2 - 2.0 * i * i / n;
}

double binom_gaussian_approx(int n, double i) {
  return std::exp(log_binom_gaussian_approx(n, i));
}

GaussianBinomialCheck binom_gaussian_check(int n, int k) {
  require_k_le_n(n, k, "binom_gaussian_check");
  GaussianBinomialCheck out;
  out.n = n;
  out.k = k;
  out.offset = k - n / 2.0;
  out.ratio =
      std::exp(log_binom_gaussian_approx(n, out.offset) - log_binom(n, k));
  out.in_regime = std::abs(out.offset) <= std::pow(double(n), 7.0 / 12.0);
  return out;
}

double xi_upper_ratio(const XiTable& table) {
  const int n = table.dimension();
  double best = kNegInf;
  for (int k = 1; k <= n; ++k) {
    best = std::max(best, table.log_value_times_binom(k));
  }
  return std::exp(best) / (std::sqrt(double(n)) * std::log(double(n)));
}

}  // namespace hyperhit
