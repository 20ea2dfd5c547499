#include "edgestat/harness/stats.hpp"

#include <algorithm>
#include <cmath>

#include "edgestat/errors.hpp"
#include "edgestat/quadrature.hpp"

namespace edgestat {

Autocorrelation integrated_autocorrelation(std::span<const double> series, double c) {
  Autocorrelation out;
  const std::size_t n = series.size();
  out.ess = static_cast<double>(n);
  if (n < 4) return out;
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> d(n);
  double c0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = series[i] - mean;
    c0 += d[i] * d[i];
  }
  c0 /= static_cast<double>(n);
  if (!(c0 > 0.0)) return out;
  double tau = 1.0;
  const std::size_t max_lag = n / 2;
  std::size_t W = 0;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double ck = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) ck += d[i] * d[i + k];
    ck /= static_cast<double>(n);
    tau += 2.0 * ck / c0;
    W = k;
    if (static_cast<double>(k) >= c * tau) break;
  }
  out.tau = std::max(tau, 1e-12);
  out.window = static_cast<int>(W);
  out.ess = static_cast<double>(n) / out.tau;
  return out;
}

MeanEstimate correlated_mean(std::span<const double> series) {
  MeanEstimate m;
  const std::size_t n = series.size();
  if (n == 0) return m;
  m.mean = pairwise_sum(series) / static_cast<double>(n);
  double var = 0.0;
  for (double v : series) var += (v - m.mean) * (v - m.mean);
  var /= static_cast<double>(std::max<std::size_t>(n - 1, 1));
  const Autocorrelation a = integrated_autocorrelation(series);
  m.ess = a.ess;
  m.standard_error = std::sqrt(var * a.tau / static_cast<double>(n));
  return m;
}

MeanEstimate combine_chains(std::span<const MeanEstimate> chains) {
  MeanEstimate out;
  double wsum = 0.0;
  double var = 0.0;
  for (const MeanEstimate& c : chains) {
    out.mean += c.ess * c.mean;
    wsum += c.ess;
  }
  if (!(wsum > 0.0)) return out;
  out.mean /= wsum;
  for (const MeanEstimate& c : chains) var += (c.ess / wsum) * (c.ess / wsum) * c.standard_error * c.standard_error;
  out.standard_error = std::sqrt(var);
  out.ess = wsum;
  return out;
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw ValidationError("ks_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double F = cdf(sample[i]);
    d = std::max({d, (i + 1) / n - F, F - i / n});
  }
  return d;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ValidationError("ks_distance: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double ks_pvalue(double d, double n) {
  const double sn = std::sqrt(n);
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 1.0 : -1.0) * term;
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

Interval wilson_interval(double k, double n, double z) {
  if (!(n > 0.0)) return {0.0, 1.0};
  const double p = k / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The bounds are exactly 0 at k = 0 and 1 at k = n; rounding would move them off.
  return {k <= 0.0 ? 0.0 : std::max(0.0, centre - half), k >= n ? 1.0 : std::min(1.0, centre + half)};
}

double jackknife_se(std::span<const double> sample, const std::function<double(std::span<const double>)>& stat) {
  const std::size_t n = sample.size();
  if (n < 2) return 0.0;
  std::vector<double> rest(n - 1);
  std::vector<double> loo(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(sample.begin(), sample.begin() + static_cast<std::ptrdiff_t>(i), rest.begin());
    std::copy(sample.begin() + static_cast<std::ptrdiff_t>(i) + 1, sample.end(),
              rest.begin() + static_cast<std::ptrdiff_t>(i));
    loo[i] = stat(rest);
  }
  double mean = 0.0;
  for (double v : loo) mean += v;
  mean /= static_cast<double>(n);
  double s = 0.0;
  for (double v : loo) s += (v - mean) * (v - mean);
  return std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n) * s);
}

}  // namespace edgestat
