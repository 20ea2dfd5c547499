#include "edgestat/harness/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "edgestat/airy.hpp"
#include "edgestat/cdkernel.hpp"
#include "edgestat/deviations.hpp"
#include "edgestat/errors.hpp"
#include "edgestat/harness/stats.hpp"
#include "edgestat/quadrature.hpp"

namespace edgestat {

namespace {

constexpr double kTableEdge = 8.0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void add_setup_meta(ExperimentReport& r, const EnsembleConfig& config, const EdgeSetup& e) {
  r.config_json = config_to_json(config);
  r.meta.emplace_back("N", static_cast<std::int64_t>(config.N));
  r.meta.emplace_back("seed", std::to_string(config.seed));
  r.meta.emplace_back("a", e.solution->a());
  r.meta.emplace_back("b", e.b);
  r.meta.emplace_back("c_star", e.c_star);
  r.meta.emplace_back("gamma", e.gamma);
  r.meta.emplace_back("fixed_point_iterations", static_cast<std::int64_t>(e.fixed_point_iterations));
  r.meta.emplace_back("fixed_point_residual", e.fixed_point_residual);
}

}  // namespace

TracyWidomTable::TracyWidomTable() {
  TracyWidomOptions opt;
  opt.check_doubling = false;
  F_ = ChebyshevSeries::interpolate([&](double s) { return tracy_widom(s, opt).F2; }, -kTableEdge, kTableEdge, 160);
}

double TracyWidomTable::operator()(double s) const {
  if (s <= -kTableEdge) return 0.0;
  if (s >= kTableEdge) return 1.0;
  return std::clamp(F_(s), 0.0, 1.0);
}

const TracyWidomTable& tracy_widom_table() {
  static const TracyWidomTable table;
  return table;
}

EdgeSetup solve_edge(const EnsembleConfig& config) {
  FixedPointOptions opt;
  opt.L = config.L;
  const FixedPointResult fp = fixed_point(config.Q, config.h, opt);
  EdgeSetup e;
  e.solution = fp.solution;
  e.b = fp.solution->b();
  const EdgeConstants k = fp.solution->edge_constants();
  e.c_star = k.c_star;
  e.gamma = k.gamma;
  e.fixed_point_iterations = fp.iterations;
  e.fixed_point_residual = fp.residual;
  validate_box(config, e.b);
  return e;
}

EdgeFluctuationResult edge_fluctuation_experiment(const EnsembleConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  validate(config, true);
  const EdgeSetup e = solve_edge(config);
  const McmcResult mc = run_mcmc(config);
  EdgeFluctuationResult out;
  const double n23 = std::cbrt(static_cast<double>(config.N) * config.N);
  std::vector<double> rescaled_gamma;
  for (double x : mc.pooled_x_max()) {
    out.rescaled.push_back((x - e.b) * e.c_star * n23);
    rescaled_gamma.push_back((x - e.b) * e.gamma * n23);
  }
  const TracyWidomTable& F2 = tracy_widom_table();
  auto cdf = [&F2](double s) { return F2(s); };
  out.ks = ks_distance(out.rescaled, cdf);
  out.ks_gamma = ks_distance(rescaled_gamma, cdf);
  out.ess = mc.ess;
  out.mixing_warning = mc.mixing_warning;

  std::vector<double> grid = config.experiment.grid;
  if (grid.empty()) {
    for (int i = 0; i <= 28; ++i) grid.push_back(-4.0 + 0.25 * i);
  }
  std::vector<double> sorted = out.rescaled;
  std::sort(sorted.begin(), sorted.end());
  Table t{"edge_cdf", {"s", "empirical_cdf", "F2", "difference"}, {}};
  for (double s : grid) {
    const double ecdf = static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), s) - sorted.begin()) /
                        static_cast<double>(sorted.size());
    t.add({s, ecdf, F2(s), ecdf - F2(s)});
  }
  out.report.tables.push_back(std::move(t));
  Table samples{"samples", {"chain", "index", "x_max", "s"}, {}};
  std::size_t k = 0;
  for (std::size_t c = 0; c < mc.chains.size(); ++c) {
    for (std::size_t i = 0; i < mc.chains[c].x_max.size(); ++i, ++k) {
      samples.add({static_cast<std::int64_t>(c), static_cast<std::int64_t>(i), mc.chains[c].x_max[i], out.rescaled[k]});
    }
  }
  out.report.tables.push_back(std::move(samples));
  add_setup_meta(out.report, config, e);
  out.report.meta.emplace_back("samples", static_cast<std::int64_t>(out.rescaled.size()));
  out.report.meta.emplace_back("ess", out.ess);
  out.report.meta.emplace_back("ks_distance", out.ks);
  out.report.meta.emplace_back("ks_distance_gamma", out.ks_gamma);
  for (std::size_t c = 0; c < mc.chains.size(); ++c) {
    out.report.meta.emplace_back("chain" + std::to_string(c) + "_acceptance", mc.chains[c].acceptance);
    out.report.meta.emplace_back("chain" + std::to_string(c) + "_tau_int", mc.chains[c].autocorrelation.tau);
  }
  out.report.warnings = mc.warnings;
  out.report.meta.emplace_back("runtime_seconds", seconds_since(t0));
  return out;
}

EdgeScanResult edge_scan(const EnsembleConfig& config, const std::vector<double>& s_grid) {
  const auto t0 = std::chrono::steady_clock::now();
  validate(config, false);
  const EdgeSetup e = solve_edge(config);
  const CDKernel K(make_weight(e.solution, config.N, config.L));
  const TracyWidomTable& F2 = tracy_widom_table();
  const double n23 = std::cbrt(static_cast<double>(config.N) * config.N);
  EdgeScanResult out;
  Table t{"edge_scan", {"s", "gap_probability", "F2", "difference"}, {}};
  for (double s : s_grid) {
    const double x = e.b + s / (e.c_star * n23);
    const double p = x >= config.L ? 1.0 : gap_probability(K, std::max(x, -config.L), config.L).probability;
    const double diff = p - F2(s);
    out.sup_difference = std::max(out.sup_difference, std::abs(diff));
    t.add({s, p, F2(s), diff});
  }
  out.report.tables.push_back(std::move(t));
  add_setup_meta(out.report, config, e);
  out.report.meta.emplace_back("sup_difference", out.sup_difference);
  out.report.meta.emplace_back("runtime_seconds", seconds_since(t0));
  return out;
}

ExperimentReport tail_experiment(const EnsembleConfig& config, const std::vector<double>& t_grid) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport report;
  Table table{"tail",
              {"t", "s", "count", "samples", "ess", "frequency", "wilson_lo", "wilson_hi", "F_NV", "ratio",
               "exact_tail", "exact_ratio", "regime", "censored"},
              {}};
  if (t_grid.empty()) {
    report.config_json = config_to_json(config);
    report.tables.push_back(std::move(table));
    report.meta.emplace_back("runtime_seconds", seconds_since(t0));
    return report;
  }
  validate(config, true);
  const EdgeSetup e = solve_edge(config);
  const DeviationProfile profile(e.solution);
  const double N = config.N;
  const double n23 = std::cbrt(N * N);
  for (double t : t_grid) {
    if (!(t > e.b + 1.0 / n23) || !(t < config.L)) {
      throw ValidationError("tail_experiment: grid point " + std::to_string(t) + " outside (b + N^{-2/3}, L)");
    }
  }
  const McmcResult mc = run_mcmc(config);
  const std::vector<double> xs = mc.pooled_x_max();
  std::unique_ptr<CDKernel> K;
  if (config.h.is_zero()) K = std::make_unique<CDKernel>(make_weight(e.solution, config.N, config.L));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  int censored = 0;
  for (double t : t_grid) {
    const auto count = static_cast<std::int64_t>(std::count_if(xs.begin(), xs.end(), [t](double x) { return x > t; }));
    const double n = static_cast<double>(xs.size());
    const double freq = static_cast<double>(count) / n;
    const Interval ci = wilson_interval(freq * mc.ess, mc.ess);
    const TailPrediction pred = tail_prediction(profile, N, t);
    double exact = nan;
    if (K) exact = gap_probability(*K, t, config.L).one_minus;
    const bool cens = mc.ess * pred.F < 10.0;
    if (cens) {
      ++censored;
      report.warnings.push_back("InsufficientTailSamples: expected count " + std::to_string(mc.ess * pred.F) +
                                " at t = " + std::to_string(t));
    }
    table.add({t, pred.s, count, static_cast<std::int64_t>(xs.size()), mc.ess, freq, ci.lo, ci.hi, pred.F,
               freq / pred.F, exact, exact / pred.F, std::string(to_string(pred.regime)),
               static_cast<std::int64_t>(cens ? 1 : 0)});
  }
  report.tables.push_back(std::move(table));
  add_setup_meta(report, config, e);
  report.meta.emplace_back("samples", static_cast<std::int64_t>(xs.size()));
  report.meta.emplace_back("ess", mc.ess);
  report.meta.emplace_back("censored_points", static_cast<std::int64_t>(censored));
  for (const std::string& w : mc.warnings) report.warnings.push_back(w);
  report.meta.emplace_back("runtime_seconds", seconds_since(t0));
  return report;
}

MeanEstimate mcmc_bin_density(const EnsembleConfig& config, double center, double delta) {
  if (!(delta > 0.0)) throw ValidationError("mcmc_bin_density: delta must be positive");
  std::vector<std::vector<double>> series(config.mcmc.chains);
  McmcOptions opt;
  const double norm = 1.0 / (2.0 * delta * config.N);
  opt.observer = [&](int chain, std::span<const double> x) {
    const auto k = std::count_if(x.begin(), x.end(), [&](double v) { return std::abs(v - center) <= delta; });
    series[chain].push_back(static_cast<double>(k) * norm);
  };
  run_mcmc(config, opt);
  std::vector<MeanEstimate> per_chain;
  for (const auto& s : series) per_chain.push_back(correlated_mean(s));
  return combine_chains(per_chain);
}

double kernel_bin_density(const CDKernel& K, double center, double delta) {
  const QuadratureRule rule = gauss_legendre(64, center - delta, center + delta);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * K.diagonal(rule.nodes[i]);
  return sum / (2.0 * delta * K.N());
}

}  // namespace edgestat
