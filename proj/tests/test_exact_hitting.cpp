// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "hyperhit/combinatorics.hpp"
#include "hyperhit/errors.hpp"
#include "hyperhit/exact_hitting.hpp"
#include "hyperhit/random_sets.hpp"

using namespace hyperhit;

TEST_CASE("LaplaceQuery parameterizations agree") {
  const auto q = LaplaceQuery<double>::make(20, 3, 2.0, 50.0);
  CHECK(q.epsilon > 0);
  CHECK(q.lambda > 0);
  CHECK(q.lambda < 1);
  CHECK(q.epsilon == doctest::Approx(10 * (1 / q.lambda - 1)).epsilon(1e-12));
  CHECK_THROWS_AS(LaplaceQuery<double>::make(20, 3, 0.0, 50.0), DomainError);
  CHECK_THROWS_AS(LaplaceQuery<double>::make(20, 21, 1.0, 50.0), DomainError);
}

TEST_CASE("laplace_formula") {
  CHECK(laplace_formula(15, 0, 1.0, 10.0) == 1.0);
  for (double s : {0.1, 1.0, 3.0}) {
    CHECK(laplace_formula(1, 1, s, 7.0) == doctest::Approx(std::exp(-s / 7)).epsilon(1e-13));
    CHECK(lumped_laplace(1, 1, s, 7.0) == doctest::Approx(std::exp(-s / 7)).epsilon(1e-13));
  }
  CHECK(std::abs(laplace_formula(10, 3, 1.0, 1000.0) / lumped_laplace(10, 3, 1.0, 1000.0) - 1) <=
        1e-8);
  for (int k = 0; k <= 12; ++k) {
    for (double m : {1.0, 100.0, 4096.0}) {
      CHECK(std::abs(laplace_formula(12, k, 0.5, m) / lumped_laplace(12, k, 0.5, m) - 1) <= 1e-8);
    }
  }
  CHECK_THROWS_AS(laplace_formula(10, 3, -1.0, 5.0), DomainError);
  CHECK_THROWS_AS(lumped_laplace(10, 3, 0.0, 5.0), DomainError);
}

TEST_CASE("long double path matches double") {
  const auto q = LaplaceQuery<long double>::make(60, 7, 1.0L, 216000.0L);
  const long double wide = laplace_formula(q);
  CHECK(double(wide) == doctest::Approx(laplace_formula(60, 7, 1.0, 216000.0)).epsilon(1e-10));
  CHECK(double(lumped_laplace<long double>(60, 7, 1.0L, 216000.0L)) ==
        doctest::Approx(double(wide)).epsilon(1e-10));
}

TEST_CASE("Beta-integral identity") {
  CHECK(laplace_alternating_exact(4, 0, 0, Rational(1, 2)) == 2);
  // n=2, k=1, j=0: 1/(1 - 1/2) - 1/(1 - 0) = 1.
  CHECK(laplace_alternating_exact(2, 1, 0, Rational(1, 2)) == 1);
  CHECK(laplace_beta_product_exact(2, 1, 0, Rational(1, 2)) == 1);
  const Rational lambdas[] = {Rational(1, 2), Rational(1, 3), Rational(9, 10)};
  for (int n = 1; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (int j = 0; k + j <= n; ++j) {
        for (const auto& lambda : lambdas) {
          CHECK(laplace_alternating_exact(n, k, j, lambda) ==
                laplace_beta_product_exact(n, k, j, lambda));
        }
      }
    }
  }
  CHECK_THROWS_AS(laplace_alternating_exact(4, 1, 0, Rational(1)), DomainError);
  CHECK_THROWS_AS(laplace_alternating_exact(4, 3, 2, Rational(1, 2)), DomainError);
}

TEST_CASE("Laplace transform is supermultiplicative along a geodesic") {
  // E_{z_{k+l}} e^{-sH(0)} >= E_{z_{k+l}} e^{-sH(z_k)} E_{z_k} e^{-sH(0)}, and
  // by symmetry the middle factor is the transform from distance l.
  for (int n = 2; n <= 12; ++n) {
    for (double s : {0.01, 0.3, 2.0}) {
      const Eigen::VectorXd phi = lumped_laplace_all<double>(n, s, 1.0);
      for (int k = 0; k <= n; ++k) {
        for (int l = 0; k + l <= n; ++l) {
          CHECK(phi[k + l] >= phi[l] * phi[k] * (1 - 1e-12));
        }
      }
    }
  }
  // One placement checked on the full cube: origin, z_2, and a point at
  // distance 3 from z_2 and 5 from the origin.
  const int n = 8;
  const int horizon = 4000;
  const Vertex far{0b11111};
  const auto to_origin = full_survival(TargetSet::singleton(n, Vertex{0}), far, horizon);
  const auto to_mid = full_survival(TargetSet::singleton(n, z_k(2)), far, horizon);
  const auto mid_to_origin = full_survival(TargetSet::singleton(n, Vertex{0}), z_k(2), horizon);
  auto transform = [](const SurvivalTable& table, double s) {
    double acc = 0;
    for (int t = 1; t < table.horizon; ++t) {
      acc += (table.at(t) - table.at(t + 1)) * std::exp(-s * t);
    }
    return acc;
  };
  for (double s : {0.01, 0.1}) {
    CHECK(transform(to_origin, s) >= transform(to_mid, s) * transform(mid_to_origin, s));
  }
}

TEST_CASE("lumped_survival") {
  for (int n : {2, 5, 17}) {
    const auto table = lumped_survival(n, 1, 10);
    CHECK(table.at(0) == 1.0);
    CHECK(table.at(1) == 1.0);
    CHECK(table.at(2) == doctest::Approx(1 - 1.0 / n).epsilon(1e-15));
  }
  const auto two = lumped_survival(2, 2, 10);
  CHECK(two.at(2) - two.at(3) == doctest::Approx(0.5));
  for (int n : {3, 10, 40}) {
    for (int k = 1; k <= n; k += 2) {
      const auto table = lumped_survival(n, k, 500);
      for (int t = 0; t < 500; ++t) {
        // Row sums of the transition matrix are 1 up to rounding.
        CHECK(table.at(t + 1) <= table.at(t) + 1e-15);
        CHECK(table.at(t) >= 0);
        CHECK(table.at(t) <= 1 + 1e-15);
      }
      CHECK(table.at(0) - table.at(500) <= 1);
    }
  }
  CHECK_THROWS_AS(lumped_survival(100, 3, 10'000'000), ResourceError);
}

TEST_CASE("p_single") {
  CHECK(p_single(10, 3, 0.0, 100.0) == 0.0);
  const int n = 16;
  const double m = std::ldexp(1.0, n) / 16;
  const double scaled = std::ldexp(1.0, n) / m * p_single(n, 8, 1.0, m);
  MESSAGE("2^n p_n(1, 8) / m = " << scaled);
  CHECK(std::abs(scaled - 1) <= 0.15);
  const double bound = 10 * std::exp(1.0) * (std::ldexp(m, -n) + xi(n, 8));
  MESSAGE("p_n / (e^a (2^-n m + xi)) = " << p_single(n, 8, 1.0, m) / (bound / 10));
  double previous = 0;
  for (double a : {0.1, 0.5, 1.0, 2.0}) {
    const double p = p_single(12, 4, a, 300.0);
    CHECK(p >= previous);
    previous = p;
  }
}

TEST_CASE("full_survival") {
  SUBCASE("empty effective target") {
    const auto table = full_survival(TargetSet::singleton(6, Vertex{5}), Vertex{5}, 50);
    CHECK(table.survival.minCoeff() == 1.0);
  }
  SUBCASE("one step from the origin") {
    for (int n : {3, 8}) {
      const auto table = full_survival(TargetSet::singleton(n, Vertex{0}), Vertex{4}, 5);
      CHECK(table.at(2) == doctest::Approx(1 - 1.0 / n).epsilon(1e-15));
    }
  }
  SUBCASE("lumping equivalence") {
    const int n = 10;
    const TargetSet origin = TargetSet::singleton(n, Vertex{0});
    for (int k = 1; k <= n; ++k) {
      const auto full = full_survival(origin, z_k(k), 400);
      const auto lumped = lumped_survival(n, k, 400);
      CHECK((full.survival - lumped.survival).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
  SUBCASE("dimension limit") {
    CHECK_THROWS_AS(full_survival(TargetSet::singleton(30, Vertex{0}), Vertex{1}, 2),
                    ResourceError);
  }
}

TEST_CASE("backward sweep agrees with forward iteration") {
  const int n = 9;
  const TargetSet set = sample_without_replacement(n, 6, 3);
  const std::vector<int> times = {0, 1, 2, 17, 80, 300};
  const Eigen::MatrixXd table = survival_all_starts(set, times);
  REQUIRE(table.rows() == (1 << n));
  for (std::uint64_t x = 0; x < (1u << n); x += 7) {
    const auto forward = full_survival(set, Vertex{x}, 300);
    for (std::size_t c = 0; c < times.size(); ++c) {
      CHECK(std::abs(table(x, c) - forward.at(times[c])) <= 1e-12);
    }
  }
  for (auto member : set.members()) {
    const auto forward = full_survival(set, Vertex{member}, 300);
    CHECK(std::abs(table(member, 3) - forward.at(17)) <= 1e-12);
  }
}

TEST_CASE("inclusion_exclusion_sum") {
  SUBCASE("single point reduces to p_single") {
    const int n = 10;
    for (int k = 1; k <= n; k += 3) {
      for (double a : {0.0, 0.5, 1.0}) {
        const double sum =
            inclusion_exclusion_sum(TargetSet::singleton(n, Vertex{0}), z_k(k), 1, a, 700.0);
        CHECK(sum == doctest::Approx(p_single(n, k, a, 700.0)).epsilon(1e-12));
      }
    }
  }
  SUBCASE("pairs by inclusion-exclusion on union targets") {
    const int n = 8;
    const TargetSet set = sample_without_replacement(n, 4, 11);
    const Vertex x{0x5a};
    const double a = 1.0, m = 64.0;
    const int horizon = steps_below(a, m);
    auto hit = [&](std::vector<std::uint64_t> points) {
      return 1 - full_survival(TargetSet(n, points), x, horizon).at(horizon);
    };
    double oracle = 0;
    for (auto y1 : set.members()) {
      for (auto y2 : set.members()) {
        if (y1 == y2 || y1 == x.bits || y2 == x.bits) continue;
        oracle += hit({y1}) + hit({y2}) - hit({y1, y2});
      }
    }
    CHECK(inclusion_exclusion_sum(set, x, 2, a, m) == doctest::Approx(oracle).epsilon(1e-10));
  }
  SUBCASE("monotone in a") {
    const TargetSet set = sample_without_replacement(10, 5, 2);
    double previous = 0;
    for (double a : {0.0, 0.25, 0.5, 1.0, 2.0}) {
      const double sum = inclusion_exclusion_sum(set, Vertex{0}, 2, a, 100.0);
      CHECK(sum >= previous);
      previous = sum;
    }
  }
  SUBCASE("limits") {
    const TargetSet set = sample_without_replacement(10, 5, 2);
    CHECK_THROWS_AS(inclusion_exclusion_sum(set, Vertex{0}, 4, 1.0, 10.0), ResourceError);
    CHECK_THROWS_AS(inclusion_exclusion_sum(sample_without_replacement(13, 5, 2), Vertex{0}, 1,
                                            1.0, 10.0),
                    ResourceError);
  }
}

TEST_CASE("steps_below") {
  CHECK(steps_below(1.0, 409.6) == 410);
  CHECK(steps_below(1.0, 8.0) == 8);
  CHECK(steps_below(0.0, 8.0) == 0);
}
