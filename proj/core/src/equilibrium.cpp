#include "edgestat/equilibrium.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "edgestat/errors.hpp"

namespace edgestat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_abs_coefficient(const ChebyshevSeries& s) {
  double m = 0.0;
  for (double c : s.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

// Drop trailing coefficients below `rel` times the largest one.
ChebyshevSeries chop(const ChebyshevSeries& s, double rel) {
  std::vector<double> c = s.coefficients();
  const double cutoff = rel * max_abs_coefficient(s);
  while (c.size() > 2 && std::abs(c.back()) <= cutoff) c.pop_back();
  return ChebyshevSeries(s.lo(), s.hi(), std::move(c));
}

}  // namespace

SmoothField::SmoothField(ConfiningField q, double L) : q_(std::move(q)), L_(L) {
  if (!(L > 0.0)) throw ValidationError("L must be positive");
}

SmoothField::SmoothField(ConfiningField q, double L,
                         const std::function<double(double)>& perturbation, int degree)
    : SmoothField(std::move(q), L) {
  if (!perturbation) return;
  p_ = ChebyshevSeries::interpolate(perturbation, -L, L, degree);
  const double scale = std::max(1.0, max_abs_coefficient(p_));
  residual_ = p_.max_residual(perturbation);
  if (residual_ > 1e-10 * scale) {
    throw NumericalError(ErrorCode::ToleranceExceeded,
                         "field interpolation residual " + std::to_string(residual_));
  }
  double odd = 0.0;
  for (std::size_t k = 1; k < p_.coefficients().size(); k += 2) {
    odd = std::max(odd, std::abs(p_.coefficients()[k]));
  }
  even_ = odd <= 1e-14 * scale;
  if (even_) p_.make_even();
  dp_ = p_.derivative();
  d2p_ = dp_.derivative();
}

double SmoothField::value(double x) const {
  return q_.value(x) + (p_.empty() ? 0.0 : p_(x));
}

double SmoothField::d1(double x) const { return q_.d1(x) + (dp_.empty() ? 0.0 : dp_(x)); }

double SmoothField::d2(double x) const { return q_.d2(x) + (d2p_.empty() ? 0.0 : d2p_(x)); }

EndpointResult solve_endpoints(const SmoothField& V, int nodes) {
  const QuadratureRule gc = gauss_chebyshev_first(nodes);
  const double L = V.L();
  EndpointResult result;

  auto residuals = [&](double c, double r) {
    double f1 = 0.0;
    double f2 = 0.0;
    for (std::size_t k = 0; k < gc.size(); ++k) {
      const double t = c + r * gc.nodes[k];
      const double v1 = V.d1(t);
      f1 += gc.weights[k] * v1;
      f2 += gc.weights[k] * t * v1;
    }
    return std::array<double, 2>{f1, f2 - kTwoPi};
  };

  if (V.is_even()) {
    // F(b) = int b x V'(bx) / sqrt(1-x^2) dx - 2 pi, increasing in b.
    auto F = [&](double b) {
      double f = 0.0;
      double df = 0.0;
      for (std::size_t k = 0; k < gc.size(); ++k) {
        const double x = gc.nodes[k];
        const double v1 = V.d1(b * x);
        f += gc.weights[k] * b * x * v1;
        df += gc.weights[k] * (x * v1 + b * x * x * V.d2(b * x));
      }
      return std::pair{f - kTwoPi, df};
    };
    double lo = 0.0;
    double hi = L;
    if (F(hi).first < 0.0) {
      throw NumericalError(ErrorCode::EndpointsOutsideDomain,
                           "support endpoint exceeds L = " + std::to_string(L));
    }
    const double curvature = V.d2(0.0);
    double b = curvature > 0.0 ? std::min(2.0 / std::sqrt(curvature), 0.9 * L) : 0.5 * L;
    bool converged = false;
    for (int it = 1; it <= 100; ++it) {
      auto [f, df] = F(b);
      result.iterations = it;
      if (f < 0.0) lo = b; else hi = b;
      if (std::abs(f) <= 1e-14 * kTwoPi) {
        converged = true;
        break;
      }
      double next = b - f / df;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const bool small = std::abs(next - b) <= 4e-16 * b;
      b = next;
      if (small) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericalError(ErrorCode::NoConvergence, "endpoint Newton iteration");
    result.a = -b;
    result.b = b;
  } else {
    double c = 0.0;
    double r = 1.0;
    auto norm = [](const std::array<double, 2>& f) { return std::hypot(f[0], f[1]); };
    std::array<double, 2> f = residuals(c, r);
    bool converged = false;
    for (int it = 1; it <= 100; ++it) {
      result.iterations = it;
      if (norm(f) <= 1e-13 * kTwoPi) {
        converged = true;
        break;
      }
      double j11 = 0.0, j12 = 0.0, j21 = 0.0, j22 = 0.0;
      for (std::size_t k = 0; k < gc.size(); ++k) {
        const double x = gc.nodes[k];
        const double t = c + r * x;
        const double v1 = V.d1(t);
        const double v2 = V.d2(t);
        const double w = gc.weights[k];
        j11 += w * v2;
        j12 += w * x * v2;
        j21 += w * (v1 + t * v2);
        j22 += w * (x * v1 + t * x * v2);
      }
      const double det = j11 * j22 - j12 * j21;
      if (det == 0.0 || !std::isfinite(det)) break;
      const double dc = (j22 * f[0] - j12 * f[1]) / det;
      const double dr = (j11 * f[1] - j21 * f[0]) / det;
      double step = 1.0;
      bool accepted = false;
      for (int ls = 0; ls < 40; ++ls) {
        const double cn = c - step * dc;
        const double rn = r - step * dr;
        if (rn > 0.0 && cn - rn > -L && cn + rn < L) {
          const std::array<double, 2> fn = residuals(cn, rn);
          if (norm(fn) < norm(f) || ls == 39) {
            c = cn;
            r = rn;
            f = fn;
            accepted = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (!accepted) break;
      if (std::abs(step * dc) + std::abs(step * dr) <= 4e-16 * (std::abs(c) + r)) {
        converged = norm(f) <= 1e-9;
        break;
      }
    }
    if (!converged) throw NumericalError(ErrorCode::NoConvergence, "endpoint Newton iteration");
    result.a = c - r;
    result.b = c + r;
  }
  if (!(result.a > -L && result.b < L)) {
    throw NumericalError(ErrorCode::EndpointsOutsideDomain,
                         "support [" + std::to_string(result.a) + ", " + std::to_string(result.b) +
                             "] not inside (-L, L)");
  }
  const auto res = residuals(0.5 * (result.a + result.b), 0.5 * (result.b - result.a));
  result.residual_mean = res[0];
  result.residual_moment = res[1];
  return result;
}

ChebyshevSeries compute_G(const SmoothField& V, double a, double b) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  const double lo = (-V.L() - c) / r;
  const double hi = (V.L() - c) / r;

  auto make_eval = [&](int ns, int nu) {
    return [&V, c, r, s_rule = gauss_chebyshev_first(ns), u_rule = gauss_legendre(nu, 0.0, 1.0)](
               double t) {
      double sum = 0.0;
      for (std::size_t i = 0; i < s_rule.size(); ++i) {
        const double s = s_rule.nodes[i];
        double inner = 0.0;
        for (std::size_t j = 0; j < u_rule.size(); ++j) {
          inner += u_rule.weights[j] * V.d2(c + r * (t + u_rule.nodes[j] * (s - t)));
        }
        sum += s_rule.weights[i] * inner;
      }
      return r * r * sum / std::numbers::pi;
    };
  };
  const auto coarse = make_eval(32, 16);
  const auto fine = make_eval(64, 32);

  double worst = 0.0;
  double scale = 0.0;
  auto checked = [&](double t) {
    const double g1 = fine(t);
    const double g0 = coarse(t);
    worst = std::max(worst, std::abs(g1 - g0));
    scale = std::max(scale, std::abs(g1));
    return g1;
  };
  ChebyshevSeries G = ChebyshevSeries::interpolate(checked, lo, hi, 64);
  if (worst > 1e-8 * std::max(1.0, scale)) {
    throw NumericalError(ErrorCode::QuadratureFailure,
                         "G quadrature refinement disagrees by " + std::to_string(worst));
  }
  const double interp = G.max_residual(fine, 9);
  if (interp > 1e-9 * std::max(1.0, scale)) {
    throw NumericalError(ErrorCode::QuadratureFailure,
                         "G interpolation residual " + std::to_string(interp));
  }
  return chop(G, 1e-16);
}

EquilibriumSolution::EquilibriumSolution(SmoothField V) : V_(std::move(V)) {
  endpoints_ = solve_endpoints(V_);
  a_ = endpoints_.a;
  b_ = endpoints_.b;
  G_ = compute_G(V_, a_, b_);
}

double EquilibriumSolution::lambda_inv(double t) const noexcept {
  if (V_.is_even()) return t / b_;
  return (t - center()) / halfwidth();
}

double EquilibriumSolution::density(double t) const {
  if (!(t > a_ && t < b_)) return 0.0;
  const double w = b_ - a_;
  return 2.0 / (w * w * std::numbers::pi) * std::sqrt((t - a_) * (b_ - t)) * G_(lambda_inv(t));
}

EdgeConstants EquilibriumSolution::edge_constants() const {
  const double g1 = G_(1.0);
  return {std::cbrt(0.5) * std::pow(g1, 2.0 / 3.0) / b_, std::pow(2.0 * g1, 2.0 / 3.0) / (b_ - a_)};
}

QuadratureRule EquilibriumSolution::measure_rule(int n) const {
  QuadratureRule rule = gauss_chebyshev_second(n);
  for (std::size_t k = 0; k < rule.size(); ++k) {
    rule.weights[k] *= G_(rule.nodes[k]) / kTwoPi;
    rule.nodes[k] = lambda(rule.nodes[k]);
  }
  return rule;
}

double EquilibriumSolution::integrate(const std::function<double(double)>& g, int n) const {
  return measure_rule(n).integrate(g);
}

double h_mu(const InteractionSpec& h, const EquilibriumSolution& mu, double t) {
  const QuadratureRule rule = mu.measure_rule();
  return rule.integrate([&](double s) { return h.h(t - s); });
}

double default_L(const ConfiningField& q) {
  const EndpointResult e = solve_endpoints(SmoothField(q, 50.0));
  return e.b + 1.5;
}

FixedPointResult fixed_point(const ConfiningField& q, const InteractionSpec& h,
                             const FixedPointOptions& options) {
  const double L = options.L > 0.0 ? options.L : default_L(q);
  FixedPointResult out;

  auto solve = [&](const std::function<double(double)>& p) {
    return std::make_shared<const EquilibriumSolution>(
        p ? SmoothField(q, L, p, options.degree) : SmoothField(q, L));
  };
  auto h_mu_of = [&h](const EquilibriumSolution& sol) {
    const QuadratureRule rule = sol.measure_rule();
    return [&h, rule](double t) { return rule.integrate([&](double s) { return h.h(t - s); }); };
  };

  std::function<double(double)> p = options.initial_perturbation;
  auto sol = solve(p);
  if (h.is_zero() && !p) {
    out.solution = sol;
    out.iterations = 1;
    return out;
  }

  std::vector<double> grid(401);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = -L + 2.0 * L * i / (grid.size() - 1);
  auto sup_diff = [&](const std::function<double(double)>& f, const std::function<double(double)>& g) {
    double m = 0.0;
    for (double t : grid) m = std::max(m, std::abs(f(t) - g(t)));
    return m;
  };

  for (int it = 1; it <= options.max_iterations; ++it) {
    const auto target = h_mu_of(*sol);
    std::function<double(double)> next = target;
    if (it > options.damping_after && p) {
      const double d = options.damping;
      next = [d, target, prev = p](double t) { return d * target(t) + (1.0 - d) * prev(t); };
    }
    // Freeze the new perturbation as its interpolant so later iterations do not nest closures.
    const ChebyshevSeries frozen = ChebyshevSeries::interpolate(next, -L, L, options.degree);
    std::function<double(double)> p_next = [frozen](double t) { return frozen(t); };
    auto sol_next = solve(p_next);

    const double density_step = sup_diff([&](double t) { return sol_next->density(t); },
                                         [&](double t) { return sol->density(t); });
    const double endpoint_step =
        std::max(std::abs(sol_next->a() - sol->a()), std::abs(sol_next->b() - sol->b()));
    p = p_next;
    sol = sol_next;
    out.iterations = it;
    out.last_step = std::max(density_step, endpoint_step);
    if (density_step <= options.tolerance && endpoint_step <= options.tolerance) {
      out.solution = sol;
      out.residual = sup_diff(p, h_mu_of(*sol));
      return out;
    }
  }
  throw NumericalError(ErrorCode::NoConvergence,
                       "fixed point did not converge in " + std::to_string(options.max_iterations) +
                           " iterations (last step " + std::to_string(out.last_step) + ")");
}

DeviationProfile::DeviationProfile(std::shared_ptr<const EquilibriumSolution> sol)
    : sol_(std::move(sol)) {}

double DeviationProfile::x_max() const noexcept { return sol_->G_series().hi(); }

double DeviationProfile::eta(double x) const {
  if (x < 1.0) throw NumericalError(ErrorCode::DomainError, "eta is defined for x >= 1");
  if (x > x_max()) throw NumericalError(ErrorCode::OutOfRange, "eta beyond the working interval");
  if (x == 1.0) return 0.0;
  // s = 1 + u^2 removes the square-root singularity at s = 1.
  auto integrand = [this](double u) {
    const double u2 = u * u;
    return 2.0 * u2 * std::sqrt(2.0 + u2) * sol_->G(1.0 + u2);
  };
  AdaptiveOptions opt;
  opt.rel_tol = 1e-13;
  return adaptive_gauss_legendre(integrand, 0.0, std::sqrt(x - 1.0), opt);
}

double DeviationProfile::eta_prime(double x) const {
  if (x < 1.0) throw NumericalError(ErrorCode::DomainError, "eta is defined for x >= 1");
  return std::sqrt((x - 1.0) * (x + 1.0)) * sol_->G(x);
}

std::vector<double> DeviationProfile::g_coefficients(int order) const {
  const std::vector<double> gt = sol_->G_series().taylor_coefficients(1.0, order);
  // sqrt(2 + v) = sqrt(2) sum_k binom(1/2, k) (v/2)^k
  std::vector<double> root(order + 1);
  double binom = 1.0;
  for (int k = 0; k <= order; ++k) {
    root[k] = std::numbers::sqrt2 * binom * std::pow(0.5, k);
    binom *= (0.5 - k) / (k + 1.0);
  }
  std::vector<double> g(order + 1, 0.0);
  for (int k = 0; k <= order; ++k) {
    for (int j = 0; j <= k; ++j) g[k] += root[j] * gt[k - j];
  }
  return g;
}

double DeviationProfile::leading_coefficient() const {
  const double bc = sol_->b() * c_star();
  auto c_of = [&](double eps) { return eta(1.0 + eps) / std::pow(eps * bc, 1.5); };
  const double eps = 1e-4;
  // Richardson step removes the O(eps) correction.
  return 2.0 * c_of(eps) - c_of(2.0 * eps);
}

std::vector<double> DeviationProfile::cramer_coefficients(int J) const {
  if (J < 0 || J > 6) throw ValidationError("cramer_coefficients: J must lie in [0, 6]");
  constexpr int kOrder = 6;
  const std::vector<double> g = g_coefficients(kOrder);
  const double bc = sol_->b() * c_star();
  std::vector<double> d(kOrder + 1);
  for (int k = 0; k <= kOrder; ++k) d[k] = g[k] / ((k + 1.5) * std::pow(bc, k + 1.5));

  const double leading = leading_coefficient();
  if (std::abs(leading - 4.0 / 3.0) > 1e-6 || std::abs(d[0] - 4.0 / 3.0) > 1e-6) {
    throw NumericalError(ErrorCode::SeriesInstability,
                         "leading coefficient " + std::to_string(leading) + " differs from 4/3");
  }
  // The truncated series must reproduce the quadrature near the edge.
  const double eps = 0.01;
  double series = 0.0;
  for (int k = 0; k <= kOrder; ++k) series += g[k] * std::pow(eps, k + 1.5) / (k + 1.5);
  const double quad = eta(1.0 + eps);
  if (std::abs(series - quad) > 1e-8 * std::abs(quad)) {
    throw NumericalError(ErrorCode::SeriesInstability,
                         "Taylor series of G disagrees with quadrature near the edge");
  }
  return {d.begin() + 1, d.begin() + 1 + J};
}

}  // namespace edgestat
