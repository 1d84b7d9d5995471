// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hyperhit/errors.hpp"
#include "hyperhit/rem_aging.hpp"

using namespace hyperhit;

TEST_CASE("REMConfig scales") {
  const REMConfig cfg = REMConfig::from_ratio(20, 0.5, 0.5, 1.0);
  CHECK(REMConfig::beta_c() == doctest::Approx(std::sqrt(2 * std::numbers::ln2)));
  CHECK(cfg.alpha * cfg.beta / REMConfig::beta_c() == doctest::Approx(0.5));
  CHECK(cfg.regime_valid());
  const double ab = cfg.alpha * cfg.beta;
  CHECK(cfg.waiting_time() ==
        doctest::Approx(std::pow(ab * std::sqrt(2 * std::numbers::pi * 20), -2) *
                        std::exp(ab * cfg.beta * 20)));
  CHECK(cfg.step_scale() == doctest::Approx(std::exp(ab * ab * 10)));
  CHECK_FALSE(REMConfig::from_ratio(20, 0.5, 1.5, 1.0).regime_valid());
  CHECK_THROWS_AS(REMConfig::from_ratio(20, 1.0, 0.5, 1.0), DomainError);
}

TEST_CASE("energies are quenched per vertex") {
  const EnergyField field(9);
  CHECK(field(12345) == field(12345));
  CHECK(field(1) != field(2));
  CHECK(EnergyField(9, true)(77) == 0.0);
  double sum = 0, sq = 0;
  const int count = 200'000;
  for (int x = 0; x < count; ++x) {
    const double e = field(std::uint64_t(x));
    sum += e;
    sq += e * e;
  }
  CHECK(std::abs(sum / count) <= 5 / std::sqrt(double(count)));
  CHECK(sq / count == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("clock process") {
  const REMConfig cfg = REMConfig::from_ratio(16, 0.5, 0.5, 1.0);
  const ClockTrajectory traj = clock_process(cfg, 500, EnergyField(3), 4);
  REQUIRE(traj.jump_times.size() == 501);
  CHECK(traj.jump_times.front() == 0.0);
  for (std::size_t k = 1; k < traj.jump_times.size(); ++k) {
    CHECK(traj.jump_times[k] > traj.jump_times[k - 1]);
    CHECK(std::popcount(traj.walk[k] ^ traj.walk[k - 1]) == 1);
  }
  for (const auto& [site, energy] : traj.energies) CHECK(energy == EnergyField(3)(site));
  CHECK_THROWS_AS(clock_process(cfg, 0, EnergyField(3), 4), DomainError);

  SUBCASE("zero energies give a mean-one clock") {
    const std::uint64_t steps = 200'000;
    const ClockTrajectory flat = clock_process(cfg, steps, EnergyField(0, true), 5);
    const double mean = flat.jump_times.back() / double(steps);
    CHECK(std::abs(mean - 1) <= 5 / std::sqrt(double(steps)));
  }
}

TEST_CASE("position_at") {
  const REMConfig cfg = REMConfig::from_ratio(12, 0.5, 0.5, 1.0);
  const ClockTrajectory traj = clock_process(cfg, 50, EnergyField(1), 2);
  const auto& s = traj.jump_times;
  CHECK(position_at(traj, 0.0) == Vertex{traj.walk[0]});
  CHECK(position_at(traj, std::nextafter(s[1], 0.0)) == Vertex{traj.walk[0]});
  for (std::size_t k = 1; k < s.size(); ++k) {
    CHECK(position_at(traj, s[k]) == Vertex{traj.walk[k]});
  }
  CHECK_THROWS_AS(position_at(traj, -1.0), DomainError);
  CHECK_THROWS_AS(position_at(traj, s.back() * 1.01), DomainError);
}

TEST_CASE("two_point") {
  const REMConfig cfg = REMConfig::from_ratio(20, 0.5, 0.5, 1.0);
  const std::vector<double> thetas = {0.5, 1.0, 3.0, 1000.0};
  TwoPointOptions options;
  options.disorder = 400;
  options.seed = 5;
  const auto base = two_point(cfg, thetas, options);
  REQUIRE(base.size() == thetas.size());
  for (const auto& e : base) {
    CHECK(e.estimate >= 0);
    CHECK(e.estimate <= 1);
    CHECK(e.target == doctest::Approx(asl(0.5, 1 / (1 + e.theta))));
    CHECK_FALSE(e.flagged);
  }
  CHECK(base[3].estimate <= base[0].estimate);

  SUBCASE("stable when walks per disorder double") {
    TwoPointOptions doubled = options;
    doubled.walks = 2;
    const auto more = two_point(cfg, thetas, doubled);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      const double se = std::hypot(base[i].stderr_, more[i].stderr_);
      CHECK(std::abs(base[i].estimate - more[i].estimate) <= 2 * se + 1e-12);
    }
  }
  SUBCASE("quenched mode uses one disorder") {
    TwoPointOptions quenched = options;
    quenched.quenched = true;
    const auto q = two_point(cfg, thetas, quenched);
    CHECK(q[1].stderr_ == doctest::Approx(
                              std::sqrt(q[1].estimate * (1 - q[1].estimate) / 400)));
  }
  SUBCASE("thread count invariance") {
#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(4);
    const auto again = two_point(cfg, thetas, options);
    omp_set_num_threads(saved);
    for (std::size_t i = 0; i < thetas.size(); ++i) CHECK(again[i].estimate == base[i].estimate);
#endif
  }
  SUBCASE("exhausted horizon is flagged") {
    TwoPointOptions starved = options;
    starved.max_steps = 1;
    const auto s = two_point(cfg, thetas, starved);
    CHECK(s[0].flagged);
  }
  CHECK_THROWS_AS(two_point(cfg, std::vector<double>{-1.0}, options), DomainError);
}

TEST_CASE("tail slope of a Pareto sample") {
  std::vector<double> pareto(100'000);
  for (std::size_t i = 0; i < pareto.size(); ++i) {
    const double u = (double(i) + 0.5) / double(pareto.size());
    pareto[i] = std::pow(u, -1 / 0.5);
  }
  CHECK(tail_log_slope(pareto, 1.0, 10.0) == doctest::Approx(-0.5).epsilon(0.02));
  CHECK_THROWS_AS(tail_log_slope(pareto, 10.0, 1.0), DomainError);
}

TEST_CASE("asl") {
  CHECK(asl(0.3, 0.0) == 0.0);
  CHECK(asl(0.3, 1.0) == 1.0);
  CHECK(asl(0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(asl(0.5, 0.75) == doctest::Approx(2.0 / 3).epsilon(1e-12));
  for (int i = 0; i <= 100; ++i) {
    const double z = i / 100.0;
    CHECK(std::abs(asl(0.5, z) - 2 / std::numbers::pi * std::asin(std::sqrt(z))) <= 1e-10);
    for (double alpha : {0.3, 0.7}) {
      CHECK(std::abs(asl(alpha, z) + asl(1 - alpha, 1 - z) - 1) <= 1e-9);
      if (i > 0) CHECK(asl(alpha, z) > asl(alpha, z - 0.01));
    }
  }
  CHECK_THROWS_AS(asl(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(asl(0.5, 1.5), DomainError);
}
