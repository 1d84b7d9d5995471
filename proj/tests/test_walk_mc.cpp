// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hyperhit/errors.hpp"
#include "hyperhit/exact_hitting.hpp"
#include "hyperhit/random_sets.hpp"
#include "hyperhit/rng.hpp"
#include "hyperhit/walk_mc.hpp"

using namespace hyperhit;

TEST_CASE("vertex basics") {
  CHECK(step(Vertex{0}, 0) == Vertex{1});
  for (std::uint64_t x : {0ull, 0x2bull, 0xfffull}) {
    for (unsigned u = 0; u < 12; ++u) CHECK(distance(step(Vertex{x}, u), Vertex{x}) == 1);
  }
  CHECK(distance(Vertex{0b1010}, Vertex{0b0110}) == 2);
  CHECK(weight(z_k(5)) == 5);
  CHECK(to_hex(Vertex{0x1f}) == "1f");
  CHECK(parse_hex("1F", 8) == Vertex{0x1f});
  CHECK_THROWS_AS(parse_hex("100", 8), DomainError);
  CHECK_THROWS_AS(parse_hex("xyz", 8), DomainError);
}

TEST_CASE("neighbour frequencies are uniform") {
  const int n = 10;
  const int steps = 1'000'000;
  SplitMix64 rng(derive_seed(5, 0));
  std::vector<int> counts(n, 0);
  const Vertex x{0x155};
  for (int i = 0; i < steps; ++i) {
    const Vertex y = step(x, uniform_below(rng, n));
    ++counts[std::countr_zero(x.bits ^ y.bits)];
  }
  const double p = 1.0 / n;
  const double sigma = std::sqrt(steps * p * (1 - p));
  for (int c : counts) CHECK(std::abs(c - steps * p) <= 5 * sigma);
}

TEST_CASE("derived seeds give distinct streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(3, 4, 5) == derive_seed(derive_seed(3, 4), 5));
  SplitMix64 a(7), b(7);
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
}

TEST_CASE("ks_to_exponential") {
  SUBCASE("Exp(1) self-test") {
    const std::size_t trials = 100'000;
    SplitMix64 rng(11);
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> sample(trials);
    for (auto& v : sample) v = exp1(rng);
    std::sort(sample.begin(), sample.end());
    CHECK(ks_to_exponential(sample) <= 1.63 / std::sqrt(double(trials)));
  }
  SUBCASE("empty sample") {
    CHECK_THROWS_AS(ks_to_exponential(std::span<const double>{}), DomainError);
  }
  SUBCASE("all samples at zero") {
    const std::vector<double> zeros(50, 0.0);
    CHECK(ks_to_exponential(zeros) == doctest::Approx(1.0));
  }
  SUBCASE("censoring flag") {
    HittingEmpirical sample;
    sample.samples = {0.5, 1.0};
    sample.trials = 100;
    sample.censored = 2;
    const KsResult ks = ks_to_exponential(sample);
    CHECK(ks.censored_fraction == doctest::Approx(0.02));
    CHECK(ks.flagged);
  }
}

TEST_CASE("simulate_hitting matches the lumped chain") {
  const int n = 10;
  const double m = 1024;
  const std::uint64_t trials = 20'000;
  const auto sample = simulate_hitting(TargetSet::singleton(n, Vertex{0}), z_k(n), m, trials, 42);
  CHECK(sample.trials == trials);
  CHECK(sample.survival(0) == 1.0);
  const int horizon = 4 * int(m);
  const auto exact = lumped_survival(n, n, horizon);
  for (double a = 0; a <= 3.0; a += 0.125) {
    const double empirical = sample.survival(a);
    const double truth = exact.at(steps_below(a, m));
    CHECK(std::abs(empirical - truth) <= 3 / std::sqrt(double(trials)));
  }
}

TEST_CASE("simulate_hitting within the DKW band of the exact curve") {
  const int n = 12;
  const double m = std::ldexp(1.0, n) / 10;
  const TargetSet set = sample_without_replacement(n, 10, 4);
  const std::uint64_t trials = 100'000;
  const Vertex x{0x9c3};
  const auto sample = simulate_hitting(set, x, m, trials, 8);
  const int horizon = int(6 * m);
  const auto exact = full_survival(set, x, horizon);
  const double band = dkw_band(trials, 1e-3);
  double worst = 0;
  for (double a = 0; a <= 5.0; a += 0.05) {
    worst = std::max(worst, std::abs(sample.survival(a) - exact.at(steps_below(a, m))));
  }
  CHECK(worst <= band);

  // KS of the exact curve: sup over a of |P[H >= a m] - e^{-a}|, where the
  // step function equals table[t] for a in ((t-1)/m, t/m].
  auto exact_ks = [&](const Eigen::VectorXd& curve) {
    double d = 0;
    for (int t = 1; t < curve.size(); ++t) {
      d = std::max({d, std::abs(curve[t] - std::exp(-(t - 1) / m)),
                    std::abs(curve[t] - std::exp(-t / m))});
    }
    return d;
  };
  const KsResult ks = ks_to_exponential(sample);
  const double truth = exact_ks(exact.survival);
  MESSAGE("KS to Exp(1) at n=12: sampled " << ks.distance << ", exact " << truth);
  CHECK(std::abs(ks.distance - truth) <= band);
  CHECK_FALSE(ks.flagged);

  // Averaged over all starts the exact curves are close to Exp(1); single
  // starts next to a member of B are not.
  std::vector<int> times(horizon + 1);
  for (int t = 0; t <= horizon; ++t) times[t] = t;
  const Eigen::MatrixXd all = survival_all_starts(set, times);
  double mean_ks = 0, max_ks = 0;
  for (Eigen::Index x = 0; x < all.rows(); ++x) {
    const double d = exact_ks(all.row(x).transpose());
    mean_ks += d / double(all.rows());
    max_ks = std::max(max_ks, d);
  }
  MESSAGE("exact KS over all starts: mean " << mean_ks << ", max " << max_ks);
  CHECK(mean_ks <= 0.05);
}

TEST_CASE("simulate_hitting edge cases") {
  CHECK_THROWS_AS(simulate_hitting(TargetSet::singleton(6, Vertex{3}), Vertex{3}, 10, 5, 1),
                  DomainError);
  const auto capped =
      simulate_hitting(TargetSet::singleton(12, Vertex{0}), z_k(12), 100, 200, 1, 20);
  CHECK(capped.censored == 200);
  CHECK(capped.cap_over_m == doctest::Approx(0.2));
  // Starting on a member: only the other members count.
  const TargetSet pair(8, {0x00, 0x01});
  const auto from_member = simulate_hitting(pair, Vertex{0}, 1, 1000, 3);
  CHECK(from_member.samples.front() >= 1.0);
}

TEST_CASE("results do not depend on thread count") {
  const TargetSet set = sample_without_replacement(14, 20, 9);
  const auto reference = simulate_hitting(set, Vertex{0x123}, 800, 4000, 77);
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  for (int threads : {1, 3, 8}) {
    omp_set_num_threads(threads);
    const auto again = simulate_hitting(set, Vertex{0x123}, 800, 4000, 77);
    CHECK(again.samples == reference.samples);
    CHECK(again.censored == reference.censored);
  }
  omp_set_num_threads(saved);
#else
  const auto again = simulate_hitting(set, Vertex{0x123}, 800, 4000, 77);
  CHECK(again.samples == reference.samples);
#endif
}

TEST_CASE("KS is roughly uniform over starts") {
  const int n = 20;
  const double m = std::ldexp(1.0, 12);
  const std::uint64_t trials = 10'000;
  const TargetSet set = sample_without_replacement(n, 256, 21);
  SplitMix64 starts(31);
  double lo = 1, hi = 0;
  for (int i = 0; i < 32; ++i) {
    const Vertex x{starts() & dimension_mask(n)};
    const double ks = ks_to_exponential(simulate_hitting(set, x, m, trials, derive_seed(4, i))).distance;
    lo = std::min(lo, ks);
    hi = std::max(hi, ks);
  }
  MESSAGE("KS range over 32 starts: [" << lo << ", " << hi << "]");
  CHECK(hi - lo <= 2 * dkw_band(trials, 1e-3));
}

TEST_CASE("dkw_band") {
  CHECK(dkw_band(10'000, 1e-3) == doctest::Approx(std::sqrt(std::log(2000.0) / 20000)));
  CHECK_THROWS_AS(dkw_band(0, 0.1), DomainError);
}
