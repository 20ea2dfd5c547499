#ifndef EDGESTAT_DEVIATIONS_HPP
#define EDGESTAT_DEVIATIONS_HPP

#include <string_view>

#include "edgestat/equilibrium.hpp"

namespace edgestat {

/// Reporting convention for the upper tail at t, not a correctness gate.
/// Moderate: N^{2/3}(t - b) >= 5 and t - b <= 0.1 b. Large: t - b > 0.1 b.
/// Edge: closer to b than the moderate window.
enum class Regime { Edge, Moderate, Large };

std::string_view to_string(Regime r) noexcept;
Regime classify(double b, double N, double t) noexcept;

/// t(s) = b + s / (c* N^{2/3}).
double edge_location(const DeviationProfile& profile, double N, double s);

/// log F_{N,V}(t) = 2 log r - N eta(x) - log(4 pi N ((t - c)^2 - r^2) eta'(x)), x = (t - c)/r,
/// with c, r the center and half-width of the support (c = 0, r = b for even V).
/// Throws DomainError for t <= b.
double log_f_nv(const DeviationProfile& profile, double N, double t);
double f_nv(const DeviationProfile& profile, double N, double t);

struct TailPrediction {
  double t = 0.0;
  double s = 0.0;  // c* N^{2/3} (t - b)
  double F = 0.0;
  double log_F = 0.0;
  Regime regime = Regime::Edge;
  double moderate_error_scale = 0.0;  // 1 / (N (t - b)^{3/2})
  double large_error_scale = 0.0;     // sqrt(t - b)
};

TailPrediction tail_prediction(const DeviationProfile& profile, double N, double t);

/// F_{N,V}(t(s)) / (1 - F_2(s)).
double tw_comparison(const DeviationProfile& profile, double N, double s);

/// eta(t/b) for t >= b, +inf below b.
double rate_function(const DeviationProfile& profile, double t);

/// log F_{N,V}(t(s)) / s^{3/2} + 4/3 + log(16 pi s^{3/2}) / s^{3/2}.
double moderate_log_check(const DeviationProfile& profile, double N, double s);

}  // namespace edgestat

#endif  // EDGESTAT_DEVIATIONS_HPP
