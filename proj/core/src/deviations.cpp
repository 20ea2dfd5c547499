#include "edgestat/deviations.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "edgestat/airy.hpp"
#include "edgestat/errors.hpp"

namespace edgestat {

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::Edge:
      return "edge";
    case Regime::Moderate:
      return "moderate";
    case Regime::Large:
      return "large";
  }
  return "edge";
}

Regime classify(double b, double N, double t) noexcept {
  const double d = t - b;
  if (d > 0.1 * b) return Regime::Large;
  if (std::cbrt(N * N) * d >= 5.0) return Regime::Moderate;
  return Regime::Edge;
}

double edge_location(const DeviationProfile& profile, double N, double s) {
  return profile.b() + s / (profile.c_star() * std::cbrt(N * N));
}

double log_f_nv(const DeviationProfile& profile, double N, double t) {
  const EquilibriumSolution& sol = profile.solution();
  if (!(t > sol.b())) throw NumericalError(ErrorCode::DomainError, "F_NV needs t > b");
  const double c = sol.center();
  const double r = sol.halfwidth();
  const double x = sol.lambda_inv(t);
  const double u = t - c;
  return 2.0 * std::log(r) - N * profile.eta(x) -
         std::log(4.0 * std::numbers::pi * N * (u - r) * (u + r) * profile.eta_prime(x));
}

double f_nv(const DeviationProfile& profile, double N, double t) { return std::exp(log_f_nv(profile, N, t)); }

TailPrediction tail_prediction(const DeviationProfile& profile, double N, double t) {
  TailPrediction p;
  p.t = t;
  const double d = t - profile.b();
  p.s = profile.c_star() * std::cbrt(N * N) * d;
  p.log_F = log_f_nv(profile, N, t);
  p.F = std::exp(p.log_F);
  p.regime = classify(profile.b(), N, t);
  p.moderate_error_scale = 1.0 / (N * d * std::sqrt(d));
  p.large_error_scale = std::sqrt(d);
  return p;
}

double tw_comparison(const DeviationProfile& profile, double N, double s) {
  const TracyWidomValue tw = tracy_widom(s);
  return std::exp(log_f_nv(profile, N, edge_location(profile, N, s)) - std::log(tw.one_minus_F2));
}

double rate_function(const DeviationProfile& profile, double t) {
  const double b = profile.b();
  if (t < b) return std::numeric_limits<double>::infinity();
  if (t == b) return 0.0;
  return profile.eta(profile.solution().lambda_inv(t));
}

double moderate_log_check(const DeviationProfile& profile, double N, double s) {
  const double s32 = s * std::sqrt(s);
  return log_f_nv(profile, N, edge_location(profile, N, s)) / s32 + 4.0 / 3.0 +
         std::log(16.0 * std::numbers::pi * s32) / s32;
}

}  // namespace edgestat
