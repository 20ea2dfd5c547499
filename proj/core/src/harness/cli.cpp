#include "edgestat/harness/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edgestat/airy.hpp"
#include "edgestat/cdkernel.hpp"
#include "edgestat/deviations.hpp"
#include "edgestat/errors.hpp"
#include "edgestat/harness/config.hpp"
#include "edgestat/harness/experiments.hpp"
#include "edgestat/harness/report.hpp"
#include "edgestat/linearize.hpp"
#include "edgestat/rng.hpp"

namespace edgestat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  bool quiet = false;
  std::vector<double> grid;
  int points = 201;
  int configurations = 50;
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

std::vector<double> steps(double lo, double hi, double h) {
  std::vector<double> v;
  const int n = static_cast<int>(std::floor((hi - lo) / h + 1e-9));
  for (int i = 0; i <= n; ++i) v.push_back(lo + h * i);
  return v;
}

EnsembleConfig require_config(const Common& c) {
  if (c.config_path.empty()) throw ValidationError("config: missing field 'config' (pass --config FILE)");
  EnsembleConfig config = load_config(c.config_path);
  if (c.seed) config.seed = *c.seed;
  if (!c.grid.empty()) config.experiment.grid = c.grid;
  return config;
}

std::vector<double> grid_or(const EnsembleConfig& config, std::vector<double> fallback) {
  return config.experiment.grid.empty() ? fallback : config.experiment.grid;
}

ExperimentReport run_equilibrium(const Common& c) {
  const EnsembleConfig config = require_config(c);
  const EdgeSetup e = solve_edge(config);
  const EquilibriumSolution& sol = *e.solution;
  ExperimentReport r;
  Table t{"equilibrium", {"t", "density"}, {}};
  for (double x : grid_or(config, linspace(sol.a(), sol.b(), c.points))) t.add({x, sol.density(x)});
  r.tables.push_back(std::move(t));
  r.config_json = config_to_json(config);
  r.meta.emplace_back("a", sol.a());
  r.meta.emplace_back("b", sol.b());
  r.meta.emplace_back("c_star", e.c_star);
  r.meta.emplace_back("gamma", e.gamma);
  r.meta.emplace_back("G_at_1", sol.G(1.0));
  r.meta.emplace_back("alpha_Q", convexity_report(config.Q, config.L).alpha);
  r.meta.emplace_back("sup_neg_h2", config.h.is_zero() ? 0.0 : config.h.sup_neg_h2());
  r.meta.emplace_back("fixed_point_iterations", static_cast<std::int64_t>(e.fixed_point_iterations));
  r.meta.emplace_back("fixed_point_residual", e.fixed_point_residual);
  return r;
}

ExperimentReport run_kernel(const Common& c) {
  const EnsembleConfig config = require_config(c);
  validate(config, false);
  const EdgeSetup e = solve_edge(config);
  const CDKernel K(make_weight(e.solution, config.N, config.L));
  const double lo = std::max(-config.L, e.solution->a() - 0.5);
  const double hi = std::min(config.L, e.b + 0.5);
  ExperimentReport r;
  Table t{"kernel", {"t", "K_diag", "rho1"}, {}};
  for (double x : grid_or(config, linspace(lo, hi, c.points))) {
    const double k = K.diagonal(x);
    t.add({x, k, k / config.N});
  }
  r.tables.push_back(std::move(t));
  r.config_json = config_to_json(config);
  r.meta.emplace_back("b", e.b);
  r.meta.emplace_back("recurrence_grid", static_cast<std::int64_t>(K.table().grid_size));
  r.meta.emplace_back("recurrence_refinement_change", K.table().refinement_change);
  return r;
}

ExperimentReport run_gap(const Common& c) {
  const EnsembleConfig config = require_config(c);
  validate(config, false);
  const EdgeSetup e = solve_edge(config);
  const CDKernel K(make_weight(e.solution, config.N, config.L));
  ExperimentReport r;
  Table t{"gap", {"t", "gap_probability"}, {}};
  for (double x : grid_or(config, steps(e.b - 0.3, e.b + 0.3, 0.05))) {
    if (!(x > -config.L && x < config.L)) throw ValidationError("gap: t = " + std::to_string(x) + " outside (-L, L)");
    t.add({x, gap_probability(K, x, config.L).probability});
  }
  r.tables.push_back(std::move(t));
  r.config_json = config_to_json(config);
  r.meta.emplace_back("b", e.b);
  return r;
}

ExperimentReport run_tw(const Common& c) {
  std::vector<double> grid = c.grid.empty() ? steps(-6.0, 8.0, 0.5) : c.grid;
  ExperimentReport r;
  Table t{"tw", {"s", "F2", "one_minus_F2", "tail_asymptotic"}, {}};
  for (double s : grid) {
    const TracyWidomValue v = tracy_widom(s);
    t.add({s, v.F2, v.one_minus_F2, s > 0.0 ? tw_tail_asymptotic(s) : kNaN});
  }
  r.tables.push_back(std::move(t));
  return r;
}

ExperimentReport run_edge_scan(const Common& c) {
  const EnsembleConfig config = require_config(c);
  return edge_scan(config, grid_or(config, steps(-5.0, 4.0, 0.25))).report;
}

ExperimentReport run_deviations(const Common& c) {
  const EnsembleConfig config = require_config(c);
  validate(config, false);
  const EdgeSetup e = solve_edge(config);
  const DeviationProfile profile(e.solution);
  std::vector<double> fallback;
  for (double d : {0.02, 0.05, 0.1, 0.2, 0.3}) fallback.push_back(e.b + d);
  ExperimentReport r;
  Table t{"deviations", {"t", "s", "F_NV", "one_minus_F2", "ratio", "regime"}, {}};
  for (double x : grid_or(config, fallback)) {
    const TailPrediction p = tail_prediction(profile, config.N, x);
    const double tw = p.s <= 12.0 ? tracy_widom(p.s).one_minus_F2 : kNaN;
    t.add({x, p.s, p.F, tw, p.F / tw, std::string(to_string(p.regime))});
  }
  r.tables.push_back(std::move(t));
  r.config_json = config_to_json(config);
  r.meta.emplace_back("b", e.b);
  r.meta.emplace_back("c_star", e.c_star);
  return r;
}

ExperimentReport run_linearize_check(const Common& c) {
  const EnsembleConfig config = require_config(c);
  validate(config, false);
  if (config.h.is_zero() || !config.h.negative_definite()) {
    throw ValidationError("linearize-check: h must be nonzero and negative definite");
  }
  const EdgeSetup e = solve_edge(config);
  const SpectralSampler sampler(config.h, e.solution);
  const HoeffdingStatistic stat(config.h, e.solution);
  std::mt19937_64 rng = make_stream(config.seed, 0);
  std::uniform_real_distribution<double> u(e.solution->a(), e.b);
  ExperimentReport r;
  Table t{"linearize_check", {"quantity", "lhs", "rhs", "tolerance", "pass"}, {}};
  LinearizationOptions opt;
  opt.throw_on_failure = false;
  int failures = 0;
  for (int k = 0; k < c.configurations; ++k) {
    std::vector<double> x(config.N);
    for (double& v : x) v = u(rng);
    const LinearizationReport lr = linearization_check(x, sampler, opt);
    const double ub = hoeffding_U(x, stat);
    const double uf = fourier_U(x, stat);
    const bool fourier_pass = std::abs(ub - uf) <= opt.tolerance;
    failures += (lr.pass ? 0 : 1) + (fourier_pass ? 0 : 1);
    const std::string id = "[" + std::to_string(k) + "]";
    t.add({"variance_vs_2U" + id, lr.variance, lr.two_U, lr.tolerance, static_cast<std::int64_t>(lr.pass)});
    t.add({"U_bracket_vs_fourier" + id, ub, uf, opt.tolerance, static_cast<std::int64_t>(fourier_pass)});
  }
  r.tables.push_back(std::move(t));
  r.config_json = config_to_json(config);
  r.meta.emplace_back("configurations", static_cast<std::int64_t>(c.configurations));
  r.meta.emplace_back("failures", static_cast<std::int64_t>(failures));
  r.meta.emplace_back("spectral_nodes", static_cast<std::int64_t>(sampler.size()));
  if (failures > 0) {
    r.warnings.push_back("ToleranceExceeded: " + std::to_string(failures) + " comparisons above tolerance");
  }
  return r;
}

ExperimentReport run_sample(const Common& c) { return edge_fluctuation_experiment(require_config(c)).report; }

ExperimentReport run_tail(const Common& c) {
  const EnsembleConfig config = require_config(c);
  return tail_experiment(config, config.experiment.grid);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge statistics of repulsive particle systems"};
  app.require_subcommand(1);
  Common c;
  std::uint64_t seed = 0;
  ExperimentReport (*action)(const Common&) = nullptr;

  struct Entry {
    const char* name;
    const char* help;
    ExperimentReport (*run)(const Common&);
  };
  const Entry entries[] = {
      {"equilibrium", "equilibrium measure, endpoints and edge constants", run_equilibrium},
      {"kernel", "diagonal of the Christoffel-Darboux kernel", run_kernel},
      {"gap", "P(x_max <= t) by Fredholm determinant", run_gap},
      {"tw", "Tracy-Widom F_2 and its tail asymptotic", run_tw},
      {"edge-scan", "exact largest-particle law at the edge against F_2", run_edge_scan},
      {"deviations", "tail asymptotic F_NV against 1 - F_2", run_deviations},
      {"linearize-check", "variance identity and U by two routes", run_linearize_check},
      {"sample", "MCMC of the interacting ensemble, edge law against F_2", run_sample},
      {"tail", "MCMC tail frequencies against F_NV", run_tail},
  };
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", c.config_path, "JSON config file");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--out", c.out, "output directory")->capture_default_str();
    sub->add_flag("--quiet", c.quiet, "no progress output");
    sub->add_option("--grid", c.grid, "comma separated grid, overrides the config")->delimiter(',');
    if (std::string(e.name) == "equilibrium" || std::string(e.name) == "kernel") {
      sub->add_option("--points", c.points, "number of grid points")->check(CLI::Range(2, 100000));
    }
    if (std::string(e.name) == "linearize-check") {
      sub->add_option("--configurations", c.configurations, "random configurations")->check(CLI::Range(1, 100000));
    }
    auto run = e.run;
    sub->callback([&action, run] { action = run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  for (CLI::App* sub : app.get_subcommands()) {
    if (sub->count("--seed") > 0) c.seed = seed;
  }

  try {
    const ExperimentReport report = action(c);
    write_report(report, c.out);
    if (!c.quiet) {
      for (const Table& t : report.tables) out << "wrote " << c.out << "/" << t.name << ".csv (" << t.rows.size() << " rows)\n";
      for (const std::string& w : report.warnings) err << "warning: " << w << "\n";
    }
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cli_main(int argc, const char* const* argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace edgestat
