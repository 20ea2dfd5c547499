#ifndef EDGESTAT_HARNESS_STATS_HPP
#define EDGESTAT_HARNESS_STATS_HPP

#include <functional>
#include <span>
#include <vector>

namespace edgestat {

struct Autocorrelation {
  double tau = 1.0;  // 1 + 2 sum_{k <= window} rho_k
  int window = 0;
  double ess = 0.0;  // n / tau
};

/// Integrated autocorrelation time with Sokal's automatic window (W >= c tau(W)).
Autocorrelation integrated_autocorrelation(std::span<const double> series, double c = 5.0);

struct MeanEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  double ess = 0.0;
};

/// Mean of a correlated series with the standard error from its autocorrelation time.
MeanEstimate correlated_mean(std::span<const double> series);

/// Combine independent chain estimates by ESS weights.
MeanEstimate combine_chains(std::span<const MeanEstimate> chains);

/// sup_x |F_n(x) - F(x)| of the empirical distribution of the sample.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Two-sample statistic sup |F_n - G_m|.
double ks_distance(std::vector<double> a, std::vector<double> b);

/// Asymptotic Kolmogorov tail P(D_n > d) with Stephens' small-sample correction.
double ks_pvalue(double d, double n);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for k successes out of n.
Interval wilson_interval(double k, double n, double z = 1.959963984540054);

/// Delete-one jackknife standard error of a statistic of the sample.
double jackknife_se(std::span<const double> sample, const std::function<double(std::span<const double>)>& stat);

}  // namespace edgestat

#endif  // EDGESTAT_HARNESS_STATS_HPP
