// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#include "presets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <functional>

#include "hyperhit/combinatorics.hpp"
#include "hyperhit/errors.hpp"
#include "hyperhit/exact_hitting.hpp"
#include "hyperhit/random_sets.hpp"
#include "hyperhit/rem_aging.hpp"
#include "hyperhit/rng.hpp"
#include "hyperhit/walk_mc.hpp"

namespace hyperhit::cli {
namespace {

using nlohmann::json;

template <class T>
T pick(T value, T fallback) {
  return value != T{} ? value : fallback;
}

void verdict(bool pass, int criterion, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
}

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4g", v);
  return buffer;
}

// Exact survival from every start against e^{-a}, a in {1/4, 1/2, 1, 2}.
int thm_gen(const PresetOptions& o, Artifacts& artifacts) {
  const int n = pick(o.n, 12);
  const std::uint64_t size = pick<std::uint64_t>(o.size, 10);
  const int seeds = pick(o.seeds, 10);
  const double m = std::ldexp(1.0, n) / double(size);
  const double as[] = {0.25, 0.5, 1.0, 2.0};
  std::vector<int> times;
  for (double a : as) times.push_back(steps_below(a, m));

  Table table({"seed", "a", "max_gap", "worst_start", "mean_survival", "exp_a"});
  int good = 0;
  for (int s = 1; s <= seeds; ++s) {
    const std::uint64_t seed = o.seed + std::uint64_t(s);
    const TargetSet set = sample_without_replacement(n, size, seed);
    const Eigen::MatrixXd survival = survival_all_starts(set, times);
    double seed_worst = 0;
    for (int c = 0; c < 4; ++c) {
      Eigen::Index worst_row = 0;
      const double gap =
          (survival.col(c).array() - std::exp(-as[c])).abs().maxCoeff(&worst_row);
      seed_worst = std::max(seed_worst, gap);
      table.add({seed, as[c], gap, hex(std::uint64_t(worst_row)), survival.col(c).mean(),
                 std::exp(-as[c])});
    }
    if (seed_worst <= 0.1) ++good;
  }
  artifacts.write("gaps", table, o.format);
  const int need = seeds - seeds / 10;
  verdict(good >= need, 5,
          std::to_string(good) + "/" + std::to_string(seeds) + " sets within 0.1 uniformly in the start");
  return good >= need ? 0 : 1;
}

int prop_sum(const PresetOptions& o, Artifacts& artifacts) {
  const int n = pick(o.n, 12);
  const std::uint64_t size = pick<std::uint64_t>(o.size, 10);
  const int seeds = pick(o.seeds, 5);
  const double m = std::ldexp(1.0, n) / double(size);
  Table table({"seed", "i", "a", "sum", "a_pow_i"});
  bool pass = true;
  std::string detail;
  for (int i = 1; i <= 2; ++i) {
    double total = 0;
    for (int s = 1; s <= seeds; ++s) {
      const std::uint64_t seed = o.seed + std::uint64_t(s);
      const TargetSet set = sample_without_replacement(n, size, seed);
      for (double a : {0.5, 1.0}) {
        const double sum = inclusion_exclusion_sum(set, Vertex{0}, i, a, m);
        table.add({seed, i, a, sum, std::pow(a, i)});
        if (a == 1.0) total += sum;
      }
    }
    const double average = total / seeds;
    pass = pass && std::abs(average - 1) <= 0.15;
    detail += (i > 1 ? ", " : "") + std::string("i=") + std::to_string(i) + " average " + num(average);
  }
  artifacts.write("sums", table, o.format);
  verdict(pass, 6, detail + " at a=1 (tolerance 15%)");
  return pass ? 0 : 1;
}

enum class SetKind { kPercolation, kSampled, kPercolationAuto };

int random_set_mc(SetKind kind, const PresetOptions& o, Artifacts& artifacts) {
  const int n = pick(o.n, 20);
  const std::uint64_t trials = pick<std::uint64_t>(o.trials, 10'000);
  const int starts = pick(o.starts, 32);
  const std::uint64_t set_seed = o.seed + 1;
  TargetSet set;
  double m = 0;
  if (kind == SetKind::kSampled) {
    set = sample_without_replacement(n, pick<std::uint64_t>(o.size, 256), set_seed);
    m = pick(o.m, std::ldexp(1.0, n) / double(set.size()));
  } else {
    const double rho = pick(o.rho, std::ldexp(1.0, 8 - n));
    set = percolation_cloud(n, rho, set_seed);
    if (set.empty()) throw DomainError("preset: the generated set is empty");
    m = kind == SetKind::kPercolationAuto ? std::ldexp(1.0, n) / double(set.size())
                                          : pick(o.m, 1 / rho);
  }

  const double tolerance = 0.05 + dkw_band(trials, 1e-3);
  Table table({"start", "a", "empirical_survival", "exp_a"});
  json per_start = json::array();
  double worst = 0;
  SplitMix64 start_rng(derive_seed(o.seed, 2));
  for (int i = 0; i < starts; ++i) {
    const Vertex x{start_rng() & dimension_mask(n)};
    if (set.without(x).empty()) continue;
    const auto sample = simulate_hitting(set, x, m, trials, derive_seed(o.seed, 3, i));
    const KsResult ks = ks_to_exponential(sample);
    worst = std::max(worst, ks.distance);
    per_start.push_back({{"start", hex(x.bits)},
                         {"ks", ks.distance},
                         {"censored_fraction", ks.censored_fraction},
                         {"flagged", ks.flagged}});
    for (int step = 0; step <= 16; ++step) {
      const double a = step * 0.25;
      table.add({hex(x.bits), a, sample.survival(a), std::exp(-a)});
    }
  }

  const bool exact_stats = n <= kExactVolumeMaxDim;
  const ConditionReport report = check_conditions(set, m, {}, exact_stats, derive_seed(o.seed, 4));
  const bool pass = worst <= tolerance;
  json doc = {{"n", n},
              {"m", m},
              {"set_size", set.size()},
              {"trials", trials},
              {"tolerance", tolerance},
              {"max_ks", worst},
              {"pass", pass},
              {"starts", per_start},
              {"conditions", json::parse(to_json(report))}};
  artifacts.write("survival", table, o.format);
  artifacts.write_json("report.json", doc);
  verdict(pass, 7,
          "max KS over " + std::to_string(per_start.size()) + " starts " + num(worst) +
              " (tolerance " + num(tolerance) + ", |B|=" + std::to_string(set.size()) +
              ", m=" + num(m) + ")");
  return pass ? 0 : 1;
}

int lemma_laplace(const PresetOptions& o, Artifacts& artifacts) {
  const int n = pick(o.n, 40);
  const double s = 1.0;
  auto scale = [&](int dim) {
    return o.m_cube || o.m == 0 ? double(dim) * dim * dim : o.m;
  };
  auto max_error = [&](int dim, Table* table) {
    const XiTable xi_table(dim);
    const double m = scale(dim);
    double worst = 0;
    for (int k = 1; k <= dim; ++k) {
      const double exact = laplace_formula(dim, k, s, m);
      const double approx = std::ldexp(m / s, -dim) + xi_table.value(k);
      const double error = std::abs(approx / exact - 1);
      worst = std::max(worst, error);
      if (table) table->add({k, exact, approx, error});
    }
    return worst;
  };
  Table table({"k", "laplace_formula", "approximation", "relative_error"});
  max_error(n, &table);
  artifacts.write("laplace_errors", table, o.format);
  const double e20 = max_error(20, nullptr), e40 = max_error(40, nullptr),
               e80 = max_error(80, nullptr);
  const bool pass = e40 <= e20 && e80 <= e40;
  verdict(pass, 4, "max relative error at n=20,40,80: " + num(e20) + ", " + num(e40) + ", " + num(e80));
  return pass ? 0 : 1;
}

int rem_aging(const PresetOptions& o, Artifacts& artifacts) {
  const int n = pick(o.n, 20);
  const REMConfig cfg = REMConfig::from_ratio(n, 0.5, 0.5, 1.0);
  const std::vector<double> thetas = {0.5, 1.0, 3.0};
  TwoPointOptions options;
  options.disorder = pick<std::uint64_t>(o.trials, 1000);
  options.seed = o.seed;
  const auto estimates = two_point(cfg, thetas, options);
  Table two({"theta", "Rn_estimate", "stderr", "asl_target", "disorder_spread", "flagged"});
  for (const auto& e : estimates) {
    two.add({e.theta, e.estimate, e.stderr_, e.target, e.disorder_spread, e.flagged});
  }
  artifacts.write("two_point", two, o.format);

  const auto tail = clock_tail_samples(cfg, 10'000, derive_seed(o.seed, 9));
  std::vector<double> sorted = tail;
  std::sort(sorted.begin(), sorted.end());
  Table tail_table({"u", "tail_probability"});
  for (int i = 0; i <= 10; ++i) {
    const double u = std::pow(10.0, i / 10.0);
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), u);
    tail_table.add({u, double(above) / double(sorted.size())});
  }
  artifacts.write("clock_tail", tail_table, o.format);

  const double slope = tail_log_slope(tail, 1.0, 10.0);
  const double gap = std::abs(estimates[1].estimate - estimates[1].target);
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < estimates.size(); ++i) {
    const double slack = 2 * std::max(estimates[i].stderr_, estimates[i + 1].stderr_);
    decreasing = decreasing && estimates[i + 1].estimate <= estimates[i].estimate + slack;
  }
  const bool pass = gap <= 0.1 && decreasing && std::abs(slope + cfg.alpha) <= 0.15;
  verdict(pass, 10,
          "|R(1) - Asl(1/2)| = " + num(gap) + ", decreasing within 2 se: " +
              (decreasing ? "yes" : "no") + ", tail slope " + num(slope) + " vs " + num(-cfg.alpha));
  return pass ? 0 : 1;
}

using Runner = std::function<int(const PresetOptions&, Artifacts&)>;

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> presets = {
      {"thm-gen", thm_gen},
      {"prop-sum", prop_sum},
      {"thm-perc",
       [](const PresetOptions& o, Artifacts& a) { return random_set_mc(SetKind::kPercolation, o, a); }},
      {"thm-sampling",
       [](const PresetOptions& o, Artifacts& a) { return random_set_mc(SetKind::kSampled, o, a); }},
      {"cor-perc",
       [](const PresetOptions& o, Artifacts& a) {
         return random_set_mc(SetKind::kPercolationAuto, o, a);
       }},
      {"lemma-laplace", lemma_laplace},
      {"rem-aging", rem_aging},
  };
  return presets;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, runner] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

int run_preset(const std::string& name, const PresetOptions& options, Artifacts& artifacts) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw DomainError("unknown preset '" + name + "'");
  try {
    return it->second(options, artifacts);
  } catch (...) {
    artifacts.discard();
    throw;
  }
}

}  // namespace hyperhit::cli
