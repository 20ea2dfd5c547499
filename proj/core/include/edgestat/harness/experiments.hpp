#ifndef EDGESTAT_HARNESS_EXPERIMENTS_HPP
#define EDGESTAT_HARNESS_EXPERIMENTS_HPP

#include <memory>
#include <vector>

#include "edgestat/cdkernel.hpp"
#include "edgestat/chebyshev.hpp"
#include "edgestat/equilibrium.hpp"
#include "edgestat/harness/config.hpp"
#include "edgestat/harness/mcmc.hpp"
#include "edgestat/harness/report.hpp"
#include "edgestat/harness/stats.hpp"

namespace edgestat {

/// F_2 as a Chebyshev interpolant on [-8, 8]; 0 below and 1 above.
class TracyWidomTable {
 public:
  TracyWidomTable();
  [[nodiscard]] double operator()(double s) const;

 private:
  ChebyshevSeries F_;
};

const TracyWidomTable& tracy_widom_table();

struct EdgeSetup {
  std::shared_ptr<const EquilibriumSolution> solution;
  double b = 0.0;
  double c_star = 0.0;
  double gamma = 0.0;
  int fixed_point_iterations = 0;
  double fixed_point_residual = 0.0;
};

/// Self-consistent field of (Q, h) on [-L, L] and its edge constants. Checks L > b + 0.5.
EdgeSetup solve_edge(const EnsembleConfig& config);

struct EdgeFluctuationResult {
  ExperimentReport report;
  std::vector<double> rescaled;  // (x_max - b) c* N^{2/3}, chain order
  double ks = 0.0;               // against F_2
  double ks_gamma = 0.0;         // same with gamma in place of c*
  double ess = 0.0;
  bool mixing_warning = false;
};

/// MCMC of the interacting ensemble, rescaled largest particle against F_2.
/// Table edge_cdf: s,empirical_cdf,F2,difference on config.experiment.grid
/// (default -4..3 in steps of 0.25); table samples: chain,index,x_max,s.
EdgeFluctuationResult edge_fluctuation_experiment(const EnsembleConfig& config);

struct EdgeScanResult {
  ExperimentReport report;
  double sup_difference = 0.0;
};

/// Exact largest-particle law of the determinantal ensemble of V (no MC):
/// P(x_max <= b + s/(c* N^{2/3})) by Fredholm determinant against F_2(s).
/// Table edge_scan: s,gap_probability,F2,difference.
EdgeScanResult edge_scan(const EnsembleConfig& config, const std::vector<double>& s_grid);

/// Tail frequencies of x_max with Wilson intervals from the effective sample
/// size, against F_{N,V}; for h = 0 also the exact tail 1 - det(I - K_N).
/// Table tail: t,s,count,samples,ess,frequency,wilson_lo,wilson_hi,F_NV,ratio,exact_tail,exact_ratio,regime,censored.
ExperimentReport tail_experiment(const EnsembleConfig& config, const std::vector<double>& t_grid);

/// Bin average of rho^1 over [center - delta, center + delta] from MCMC:
/// mean over retained configurations of #{|x_j - center| <= delta} / (2 delta N).
MeanEstimate mcmc_bin_density(const EnsembleConfig& config, double center, double delta);

/// The same bin average of K_N(t, t) / N for a determinantal ensemble.
double kernel_bin_density(const CDKernel& K, double center, double delta);

}  // namespace edgestat

#endif  // EDGESTAT_HARNESS_EXPERIMENTS_HPP
