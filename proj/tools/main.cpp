// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

// hyperhit: hitting times of random walks on the hypercube, and REM aging.
//
// Exit codes: 0 ok, 1 tolerance violated, 2 usage or domain error,
// 3 resource limit or I/O failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hyperhit/combinatorics.hpp"
#include "hyperhit/errors.hpp"
#include "hyperhit/exact_hitting.hpp"
#include "hyperhit/random_sets.hpp"
#include "hyperhit/rem_aging.hpp"
#include "hyperhit/walk_mc.hpp"
#include "output.hpp"
#include "presets.hpp"

namespace {

using namespace hyperhit;
using namespace hyperhit::cli;
using nlohmann::json;

constexpr int kExitTolerance = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Globals {
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
  std::string format = "csv";

  Format fmt() const { return format == "json" ? Format::kJson : Format::kCsv; }
};

// Writes a table to <out>/<stem>.{csv,json} when --out is set, else stdout.
void emit(const Globals& g, const std::string& stem, const Table& table) {
  if (g.out.empty()) {
    table.write(std::cout, g.fmt());
    return;
  }
  Artifacts artifacts(g.out);
  artifacts.write(stem, table, g.fmt());
}

void emit_json(const Globals& g, const std::string& name, const json& doc) {
  if (g.out.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  Artifacts artifacts(g.out);
  artifacts.write_json(name, doc);
}

TargetSet load_set(const std::string& path, int n) {
  TargetSet set = read_set_file(path);
  if (n != 0 && set.dimension() != n) {
    throw DomainError("set file " + path + " has n=" + std::to_string(set.dimension()) +
                      ", expected " + std::to_string(n));
  }
  return set;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hitting times of random walks on the hypercube, and REM aging"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");

  Globals g;
  app.add_option("--seed", g.seed, "Root seed; all randomness derives from it");
  app.add_option("--threads", g.threads, "Worker threads (0: runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "Output directory (default: stdout, or . for presets)");
  app.add_option("--format", g.format, "Table format")->check(CLI::IsMember({"csv", "json"}));

  std::function<int()> action;

  // xi
  {
    auto* cmd = app.add_subcommand("xi", "Tabulate the correction function xi_n(k)");
    static int n = 0, k = -1;
    static bool all = false, exact = false;
    cmd->add_option("--n", n, "Dimension")->required()->check(CLI::Range(1, 1 << 20));
    auto* k_opt = cmd->add_option("--k", k, "Single distance");
    auto* all_opt = cmd->add_flag("--all", all, "All k = 0..n");
    k_opt->excludes(all_opt);
    cmd->add_flag("--exact", exact, "Print exact rationals (n <= 30)");
    cmd->callback([&] {
      action = [&] {
        if (k < 0 && !all) throw DomainError("xi: give --k or --all");
        if (exact && n > kXiExactCutoff) throw DomainError("xi: --exact needs n <= 30");
        const XiTable table(n);
        Table out({"k", "xi", "xi_times_binom"});
        const int lo = all ? 0 : k, hi = all ? n : k;
        if (hi > n) throw DomainError("xi: k must be <= n");
        for (int j = lo; j <= hi; ++j) {
          if (exact) {
            const Rational value = xi_exact(n, j);
            const Rational product = value * binom_exact(n, j);
            out.add({j, value.get_str(), product.get_str()});
          } else {
            out.add({j, table.value(j), std::exp(table.log_value_times_binom(j))});
          }
        }
        emit(g, "xi", out);
        return 0;
      };
    });
  }

  // laplace
  {
    auto* cmd = app.add_subcommand("laplace", "E exp(-(s/m) H) from distance k to a point");
    static int n = 0, k = 0;
    static double s = 1, m = 0;
    cmd->add_option("--n", n)->required()->check(CLI::Range(1, 100000));
    cmd->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
    cmd->add_option("--s", s)->required();
    cmd->add_option("--m", m)->required();
    cmd->callback([&] {
      action = [&] {
        const double formula = laplace_formula(n, k, s, m);
        const double lumped = lumped_laplace(n, k, s, m);
        Table out({"n", "k", "s", "m", "laplace_formula", "lumped_laplace", "relative_gap"});
        out.add({n, k, s, m, formula, lumped, std::abs(formula / lumped - 1)});
        emit(g, "laplace", out);
        return 0;
      };
    });
  }

  // survival
  {
    auto* cmd = app.add_subcommand("survival", "Exact P[H >= t] for t = 0..horizon");
    static int n = 0, k = 0, horizon = 0;
    static bool lumped = false;
    static std::string set_path, x_hex;
    cmd->add_option("--n", n)->required()->check(CLI::Range(1, 64));
    auto* lumped_opt = cmd->add_flag("--lumped", lumped, "Single target point, start at distance k");
    cmd->add_option("--k", k)->needs(lumped_opt);
    auto* set_opt = cmd->add_option("--set", set_path, "Target set file");
    set_opt->excludes(lumped_opt);
    cmd->add_option("--x", x_hex, "Start vertex in hex")->needs(set_opt);
    cmd->add_option("--horizon", horizon)->required()->check(CLI::NonNegativeNumber);
    cmd->callback([&] {
      action = [&] {
        SurvivalTable table;
        if (lumped) {
          table = lumped_survival(n, k, horizon);
        } else {
          if (set_path.empty() || x_hex.empty()) {
            throw DomainError("survival: give --lumped --k, or --set and --x");
          }
          table = full_survival(load_set(set_path, n), parse_hex(x_hex, n), horizon);
        }
        Table out({"t", "survival"});
        for (int t = 0; t <= horizon; ++t) out.add({t, table.at(t)});
        emit(g, "survival", out);
        return 0;
      };
    });
  }

  // incl-excl
  {
    auto* cmd = app.add_subcommand("incl-excl", "Sum over ordered i-tuples of P[all hit before a m]");
    static int n = 0, i = 1;
    static double a = 1, m = 0;
    static std::string set_path, x_hex;
    cmd->add_option("--n", n)->required();
    cmd->add_option("--set", set_path)->required();
    cmd->add_option("--x", x_hex)->required();
    cmd->add_option("--i", i)->required();
    cmd->add_option("--a", a)->required();
    cmd->add_option("--m", m)->required();
    cmd->callback([&] {
      action = [&] {
        const TargetSet set = load_set(set_path, n);
        const double sum = inclusion_exclusion_sum(set, parse_hex(x_hex, n), i, a, m);
        Table out({"i", "a", "m", "sum", "a_pow_i"});
        out.add({i, a, m, sum, std::pow(a, i)});
        emit(g, "incl_excl", out);
        return 0;
      };
    });
  }

  // hit-mc
  {
    auto* cmd = app.add_subcommand("hit-mc", "Monte Carlo hitting times against Exp(1)");
    static int n = 0;
    static double m = 0;
    static std::uint64_t trials = 10000, cap = 0;
    static std::string set_path, x_hex;
    cmd->add_option("--n", n)->required();
    cmd->add_option("--set", set_path)->required();
    cmd->add_option("--x", x_hex)->required();
    cmd->add_option("--m", m)->required();
    cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
    cmd->add_option("--cap", cap, "Step cap per walk (default 50 m)");
    cmd->callback([&] {
      action = [&] {
        const TargetSet set = load_set(set_path, n);
        const auto sample = simulate_hitting(set, parse_hex(x_hex, n), m, trials, g.seed, cap);
        const KsResult ks = ks_to_exponential(sample);
        Table out({"a", "empirical_survival", "exp_a", "ks_running"});
        double running = 0;
        for (int step = 0; step <= 100; ++step) {
          const double a = step * 0.05;
          const double empirical = sample.survival(a);
          running = std::max(running, std::abs(empirical - std::exp(-a)));
          out.add({a, empirical, std::exp(-a), running});
        }
        const json summary = {{"ks", ks.distance},
                              {"censored_fraction", ks.censored_fraction},
                              {"flagged", ks.flagged},
                              {"trials", trials},
                              {"m", m},
                              {"seed", g.seed},
                              {"dkw_band", dkw_band(trials, 1e-3)}};
        if (g.out.empty()) {
          out.write(std::cout, g.fmt());
          std::cerr << summary.dump() << '\n';
        } else {
          Artifacts artifacts(g.out);
          artifacts.write("hit_mc", out, g.fmt());
          artifacts.write_json("summary.json", summary);
        }
        return 0;
      };
    });
  }

  // make-set
  {
    auto* cmd = app.add_subcommand("make-set", "Generate a random target set file");
    cmd->require_subcommand(1);
    static int n = 0;
    static double rho = 0;
    static std::uint64_t count = 0;
    static std::string path;
    auto* perc = cmd->add_subcommand("percolation", "Each vertex independently with density rho");
    perc->add_option("--n", n)->required();
    perc->add_option("--rho", rho)->required();
    perc->add_option("-o,--output", path)->required();
    auto* sample = cmd->add_subcommand("sample", "Uniform subset of size M");
    sample->add_option("--n", n)->required();
    sample->add_option("--M", count)->required();
    sample->add_option("-o,--output", path)->required();
    perc->callback([&] {
      action = [&] {
        const TargetSet set = percolation_cloud(n, rho, g.seed);
        write_set_file(path, set);
        std::cerr << "wrote " << set.size() << " vertices to " << path << '\n';
        return 0;
      };
    });
    sample->callback([&] {
      action = [&] {
        const TargetSet set = sample_without_replacement(n, count, g.seed);
        write_set_file(path, set);
        std::cerr << "wrote " << set.size() << " vertices to " << path << '\n';
        return 0;
      };
    });
  }

  // check
  {
    auto* cmd = app.add_subcommand("check", "Evaluate the general theorem's hypotheses on a set");
    static int n = 0;
    static std::string set_path, m_text;
    static bool exact_stats = false;
    static ConditionThresholds thresholds;
    cmd->add_option("--n", n)->required();
    cmd->add_option("--set", set_path)->required();
    cmd->add_option("--m", m_text, "Time scale, or 'auto' for 2^n/|B|")->required();
    cmd->add_flag("--exact-stats", exact_stats, "Exact max over all centres (n <= 24)");
    cmd->add_option("--threshold-size", thresholds.size);
    cmd->add_option("--threshold-xi", thresholds.xi_gap);
    cmd->add_option("--threshold-vsum", thresholds.vsum);
    cmd->add_option("--threshold-vbig", thresholds.vbig);
    cmd->callback([&] {
      action = [&] {
        const TargetSet set = load_set(set_path, n);
        double m = 0;
        if (m_text == "auto") {
          if (set.empty()) throw DomainError("check: empty set");
          m = std::ldexp(1.0, n) / double(set.size());
        } else {
          try {
            m = std::stod(m_text);
          } catch (const std::exception&) {
            throw DomainError("check: --m must be a number or 'auto'");
          }
        }
        const ConditionReport report = check_conditions(set, m, thresholds, exact_stats, g.seed);
        emit_json(g, "report.json", json::parse(to_json(report)));
        return report.verdicts.all() ? 0 : kExitTolerance;
      };
    });
  }

  // rem
  {
    auto* cmd = app.add_subcommand("rem", "Two-point function of REM dynamics by Monte Carlo");
    static int n = 20;
    static double alpha = 0.5, ratio = 0.5;
    static std::vector<double> thetas = {1.0};
    static TwoPointOptions options;
    cmd->add_option("--n", n)->required()->check(CLI::Range(1, 64));
    cmd->add_option("--alpha", alpha);
    cmd->add_option("--beta-ratio", ratio, "alpha*beta/beta_c");
    cmd->add_option("--theta", thetas, "Comma-separated list")->delimiter(',');
    cmd->add_option("--disorder", options.disorder)->check(CLI::PositiveNumber);
    cmd->add_option("--walks", options.walks)->check(CLI::PositiveNumber);
    cmd->add_option("--max-steps", options.max_steps);
    cmd->add_flag("--quenched", options.quenched, "Share one disorder realization");
    cmd->callback([&] {
      action = [&] {
        const REMConfig cfg = REMConfig::from_ratio(n, alpha, ratio, thetas.front());
        if (!cfg.regime_valid()) std::cerr << "warning: alpha*beta outside (0, beta_c)\n";
        options.seed = g.seed;
        const auto estimates = two_point(cfg, thetas, options);
        Table out({"theta", "Rn_estimate", "stderr", "asl_target"});
        for (const auto& e : estimates) {
          out.add({e.theta, e.estimate, e.stderr_, e.target});
          if (e.flagged) {
            std::cerr << "warning: theta=" << e.theta << ": " << e.exhausted_fraction
                      << " of trials ran out of steps\n";
          }
        }
        emit(g, "rem", out);
        return 0;
      };
    });
  }

  // asl
  {
    auto* cmd = app.add_subcommand("asl", "Generalised arcsine law I_z(alpha, 1 - alpha)");
    static double alpha = 0.5, z = 0.5;
    cmd->add_option("--alpha", alpha)->required();
    cmd->add_option("--z", z)->required();
    cmd->callback([&] {
      action = [&] {
        Table out({"alpha", "z", "asl"});
        out.add({alpha, z, asl(alpha, z)});
        emit(g, "asl", out);
        return 0;
      };
    });
  }

  // preset
  {
    auto* cmd = app.add_subcommand("preset", "Run a named experiment and print its verdicts");
    static std::string name;
    static PresetOptions options;
    std::string names;
    for (const auto& p : preset_names()) names += (names.empty() ? "" : ", ") + p;
    cmd->add_option("name", name, "One of: " + names)->required();
    cmd->add_option("--n", options.n);
    cmd->add_option("--m", options.m);
    cmd->add_flag("--m-cube", options.m_cube, "Use m = n^3");
    cmd->add_option("--rho", options.rho);
    cmd->add_option("--size", options.size, "Set size for sampled sets");
    cmd->add_option("--trials", options.trials, "Walks per start, or disorder count for rem-aging");
    cmd->add_option("--seeds", options.seeds, "Number of seeded sets");
    cmd->add_option("--starts", options.starts, "Sampled start vertices");
    cmd->callback([&] {
      action = [&] {
        options.seed = g.seed;
        options.format = g.fmt();
        Artifacts artifacts(g.out.empty() ? "." : g.out);
        const int status = run_preset(name, options, artifacts);
        for (const auto& path : artifacts.written()) std::cerr << "wrote " << path.string() << '\n';
        return status;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

#ifdef _OPENMP
  if (g.threads > 0) omp_set_num_threads(g.threads);
#endif

  try {
    return action ? action() : kExitUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << " (estimated requirement " << e.required()
              << ")\n";
    return kExitResource;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  }
}
