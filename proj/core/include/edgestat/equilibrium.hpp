#ifndef EDGESTAT_EQUILIBRIUM_HPP
#define EDGESTAT_EQUILIBRIUM_HPP

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "edgestat/chebyshev.hpp"
#include "edgestat/fields.hpp"
#include "edgestat/quadrature.hpp"

namespace edgestat {

/// V = Q + p on [-L, L], with p a Chebyshev interpolant of a smooth perturbation.
class SmoothField {
 public:
  SmoothField(ConfiningField q, double L);
  SmoothField(ConfiningField q, double L, const std::function<double(double)>& perturbation,
              int degree = 128);

  [[nodiscard]] double value(double x) const;
  [[nodiscard]] double d1(double x) const;
  [[nodiscard]] double d2(double x) const;
  [[nodiscard]] double operator()(double x) const { return value(x); }

  [[nodiscard]] double L() const noexcept { return L_; }
  [[nodiscard]] bool is_even() const noexcept { return even_; }
  [[nodiscard]] bool has_perturbation() const noexcept { return !p_.empty(); }
  [[nodiscard]] const ConfiningField& confining() const noexcept { return q_; }
  [[nodiscard]] const ChebyshevSeries& perturbation() const noexcept { return p_; }
  [[nodiscard]] double perturbation_value(double x) const { return p_.empty() ? 0.0 : p_(x); }

  /// Off-grid interpolation residual measured at construction.
  [[nodiscard]] double interpolation_residual() const noexcept { return residual_; }

 private:
  ConfiningField q_;
  double L_;
  ChebyshevSeries p_;
  ChebyshevSeries dp_;
  ChebyshevSeries d2p_;
  bool even_ = true;
  double residual_ = 0.0;
};

struct EndpointResult {
  double a = 0.0;
  double b = 0.0;
  double residual_mean = 0.0;    // int V'/sqrt((b-t)(t-a)) dt
  double residual_moment = 0.0;  // int t V'/sqrt((b-t)(t-a)) dt - 2 pi
  int iterations = 0;
};

/// Support endpoints of the equilibrium measure of V. Newton on b alone for
/// even V, on (a, b) otherwise.
EndpointResult solve_endpoints(const SmoothField& V, int nodes = 256);

/// G_V as a Chebyshev interpolant on [(-L-c)/r, (L-c)/r] with c, r the center
/// and half-width of [a, b]; the rescaled support is [-1, 1].
ChebyshevSeries compute_G(const SmoothField& V, double a, double b);

struct EdgeConstants {
  double c_star = 0.0;
  double gamma = 0.0;
};

class EquilibriumSolution {
 public:
  explicit EquilibriumSolution(SmoothField V);

  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double b() const noexcept { return b_; }
  [[nodiscard]] double center() const noexcept { return 0.5 * (a_ + b_); }
  [[nodiscard]] double halfwidth() const noexcept { return 0.5 * (b_ - a_); }

  /// The affine map sending [-1, 1] onto [a, b], and its inverse.
  [[nodiscard]] double lambda(double x) const noexcept { return center() + halfwidth() * x; }
  [[nodiscard]] double lambda_inv(double t) const noexcept;

  [[nodiscard]] double G(double x) const { return G_(x); }
  [[nodiscard]] const ChebyshevSeries& G_series() const noexcept { return G_; }
  [[nodiscard]] double density(double t) const;
  [[nodiscard]] EdgeConstants edge_constants() const;
  [[nodiscard]] double c_star() const { return edge_constants().c_star; }
  [[nodiscard]] double gamma() const { return edge_constants().gamma; }

  [[nodiscard]] const SmoothField& field() const noexcept { return V_; }
  [[nodiscard]] const EndpointResult& endpoints() const noexcept { return endpoints_; }

  /// Rule with nodes in (a, b) and weights carrying the measure:
  /// sum_k w_k g(t_k) ~ int g dmu. Gauss-Chebyshev of the second kind.
  [[nodiscard]] QuadratureRule measure_rule(int n = 192) const;
  [[nodiscard]] double integrate(const std::function<double(double)>& g, int n = 192) const;

 private:
  SmoothField V_;
  EndpointResult endpoints_;
  double a_ = 0.0;
  double b_ = 0.0;
  ChebyshevSeries G_;
};

inline double density(const EquilibriumSolution& sol, double t) { return sol.density(t); }
inline EdgeConstants edge_constants(const EquilibriumSolution& sol) { return sol.edge_constants(); }

/// h_mu(t) = int h(t - s) dmu(s).
double h_mu(const InteractionSpec& h, const EquilibriumSolution& mu, double t);

struct FixedPointOptions {
  double L = 0.0;  // 0: choose from the unperturbed support
  int max_iterations = 200;
  int damping_after = 50;
  double damping = 0.5;
  double tolerance = 1e-10;
  int degree = 128;
  /// Starting perturbation p_0 in V_0 = Q + p_0. Defaults to zero (mu_0 = mu_Q).
  std::function<double(double)> initial_perturbation;
};

struct FixedPointResult {
  std::shared_ptr<const EquilibriumSolution> solution;
  int iterations = 0;
  double residual = 0.0;  // sup |V - (Q + h_mu)| on [-L, L]
  double last_step = 0.0;
};

/// Default working half-length: the unperturbed support plus 1.5, enough to
/// contain [a - 0.5, b + 0.5] for the weak interactions used here.
double default_L(const ConfiningField& q);

/// Self-consistent field V = Q + h_mu with mu the equilibrium measure of V.
FixedPointResult fixed_point(const ConfiningField& q, const InteractionSpec& h,
                             const FixedPointOptions& options = {});

/// Rate function and edge expansion data derived from an equilibrium solution.
class DeviationProfile {
 public:
  explicit DeviationProfile(std::shared_ptr<const EquilibriumSolution> sol);

  /// eta(x) = int_1^x sqrt(s^2 - 1) G(s) ds for 1 <= x <= x_max().
  [[nodiscard]] double eta(double x) const;
  [[nodiscard]] double eta_prime(double x) const;
  [[nodiscard]] double x_max() const noexcept;

  /// d_1..d_J of N eta(t(s)/b) = (4/3) s^{3/2} + sum_j d_j s^{j+3/2} N^{-2j/3},
  /// t(s) = b + s / (c* N^{2/3}). Throws SeriesInstability.
  [[nodiscard]] std::vector<double> cramer_coefficients(int J) const;

  /// Coefficient of s^{3/2}, recovered from eta by quadrature at small distance to the edge.
  [[nodiscard]] double leading_coefficient() const;

  [[nodiscard]] double b() const noexcept { return sol_->b(); }
  [[nodiscard]] double c_star() const { return sol_->c_star(); }
  [[nodiscard]] const EquilibriumSolution& solution() const noexcept { return *sol_; }

 private:
  /// Taylor coefficients g_k of sqrt(2+v) G(1+v) at v = 0.
  [[nodiscard]] std::vector<double> g_coefficients(int order) const;

  std::shared_ptr<const EquilibriumSolution> sol_;
};

}  // namespace edgestat

#endif  // EDGESTAT_EQUILIBRIUM_HPP
