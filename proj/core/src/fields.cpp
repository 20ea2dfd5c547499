#include "edgestat/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "edgestat/errors.hpp"

namespace edgestat {

namespace {

std::vector<double> differentiate(const std::vector<double>& p) {
  if (p.size() <= 1) return {0.0};
  std::vector<double> d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

double horner(const std::vector<double>& p, double x) noexcept {
  double s = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + *it;
  return s;
}

double bisect_root(const std::vector<double>& p, double lo, double hi) {
  double flo = horner(p, lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = horner(p, mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ConfiningField::ConfiningField(std::vector<double> coefficients) : q_(std::move(coefficients)) {
  while (!q_.empty() && q_.back() == 0.0) q_.pop_back();
  if (q_.empty()) throw ValidationError("Q: coefficient list is empty or identically zero");
  for (double c : q_) {
    if (!std::isfinite(c)) throw ValidationError("Q: coefficients must be finite");
  }
  if (degree() > kMaxDegree) throw ValidationError("Q: degree exceeds 12");
  for (std::size_t k = 1; k < q_.size(); k += 2) {
    if (q_[k] != 0.0) throw ValidationError("Q: odd-degree coefficients must be zero");
  }
  if (degree() < 2 || q_.back() <= 0.0) {
    throw ValidationError("Q: leading coefficient must be positive and degree >= 2");
  }
  dq_ = differentiate(q_);
  d2q_ = differentiate(dq_);
  d3q_ = differentiate(d2q_);
}

double ConfiningField::value(double x) const noexcept { return horner(q_, x); }
double ConfiningField::d1(double x) const noexcept { return horner(dq_, x); }
double ConfiningField::d2(double x) const noexcept { return horner(d2q_, x); }
double ConfiningField::d3(double x) const noexcept { return horner(d3q_, x); }

ConvexityReport convexity_report(const ConfiningField& q, double L) {
  ConvexityReport report;
  report.lower = -L - 1.0;
  report.upper = L + 1.0;
  const std::vector<double>& c = q.coefficients();
  std::vector<double> d3(c.size() > 3 ? c.size() - 3 : 1, 0.0);
  for (std::size_t k = 3; k < c.size(); ++k) {
    d3[k - 3] = static_cast<double>(k * (k - 1) * (k - 2)) * c[k];
  }
  while (d3.size() > 1 && d3.back() == 0.0) d3.pop_back();

  // Cauchy bound on the real roots of Q'''.
  double bound = 0.0;
  if (d3.size() > 1) {
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < d3.size(); ++k) m = std::max(m, std::abs(d3[k] / d3.back()));
    bound = 1.0 + m;
  }
  report.root_bound = bound;

  std::vector<double> candidates = {report.lower, report.upper};
  if (d3.size() > 1) {
    // Roots of Q''' are bracketed by a fine sign scan; Q''' has at most 9 of them.
    const int samples = 4096;
    double prev_x = report.lower;
    double prev = horner(d3, prev_x);
    for (int i = 1; i <= samples; ++i) {
      const double x = report.lower + (report.upper - report.lower) * i / samples;
      const double v = horner(d3, x);
      if (v == 0.0) {
        candidates.push_back(x);
      } else if ((v < 0) != (prev < 0) && prev != 0.0) {
        candidates.push_back(bisect_root(d3, prev_x, x));
      }
      prev_x = x;
      prev = v;
    }
  }
  report.alpha = std::numeric_limits<double>::infinity();
  for (double x : candidates) {
    const double v = q.d2(x);
    if (v < report.alpha) {
      report.alpha = v;
      report.argmin = x;
    }
  }
  report.global = bound <= report.upper;
  return report;
}

double alpha_Q(const ConfiningField& q, double L) {
  const ConvexityReport r = convexity_report(q, L);
  if (!(r.alpha > 0.0)) {
    throw NumericalError(ErrorCode::NonConvex, "inf Q'' = " + std::to_string(r.alpha) + " at x = " +
                                                   std::to_string(r.argmin));
  }
  return r.alpha;
}

InteractionSpec::InteractionSpec(std::vector<GaussianTerm> terms) : terms_(std::move(terms)) {
  for (const GaussianTerm& t : terms_) {
    if (!std::isfinite(t.c)) throw ValidationError("h: amplitude must be finite");
    if (!(t.sigma > 0.0) || !std::isfinite(t.sigma)) {
      throw ValidationError("h: sigma must be positive and finite");
    }
  }
}

double InteractionSpec::h(double t) const noexcept {
  double s = 0.0;
  for (const GaussianTerm& g : terms_) s += g.c * std::exp(-0.5 * t * t / (g.sigma * g.sigma));
  return s;
}

double InteractionSpec::d1(double t) const noexcept {
  double s = 0.0;
  for (const GaussianTerm& g : terms_) {
    const double v = 1.0 / (g.sigma * g.sigma);
    s -= g.c * t * v * std::exp(-0.5 * t * t * v);
  }
  return s;
}

double InteractionSpec::d2(double t) const noexcept {
  double s = 0.0;
  for (const GaussianTerm& g : terms_) {
    const double v = 1.0 / (g.sigma * g.sigma);
    s += g.c * (t * t * v * v - v) * std::exp(-0.5 * t * t * v);
  }
  return s;
}

double InteractionSpec::fourier(double t) const noexcept {
  double s = 0.0;
  for (const GaussianTerm& g : terms_) s += g.c * g.sigma * std::exp(-0.5 * g.sigma * g.sigma * t * t);
  return s;
}

bool InteractionSpec::positive_definite() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const GaussianTerm& g) { return g.c >= 0.0; });
}

bool InteractionSpec::negative_definite() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const GaussianTerm& g) { return g.c <= 0.0; });
}

bool InteractionSpec::is_zero() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const GaussianTerm& g) { return g.c == 0.0; });
}

double InteractionSpec::sup_neg_h2() const {
  if (terms_.empty()) return 0.0;
  double smax = 0.0;
  for (const GaussianTerm& g : terms_) smax = std::max(smax, g.sigma);
  // -h'' is even and decays beyond a few widths; scan then refine by golden section.
  const double T = 12.0 * smax;
  const int n = 6000;
  double best = -std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = T * i / n;
    const double v = -d2(t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  double lo = std::max(0.0, best_t - T / n);
  double hi = best_t + T / n;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 100; ++it) {
    const double m1 = hi - phi * (hi - lo);
    const double m2 = lo + phi * (hi - lo);
    if (-d2(m1) > -d2(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::max({best, -d2(0.5 * (lo + hi)), 0.0});
}

double InteractionSpec::fourier_cutoff(double threshold) const noexcept {
  double S = 0.0;
  for (const GaussianTerm& g : terms_) {
    const double amp = std::abs(g.c) * g.sigma;
    if (amp <= threshold || amp == 0.0) continue;
    S = std::max(S, std::sqrt(2.0 * std::log(amp * terms_.size() / threshold)) / g.sigma);
  }
  return S;
}

InteractionSpec InteractionSpec::scaled(double factor) const {
  std::vector<GaussianTerm> t = terms_;
  for (GaussianTerm& g : t) g.c *= factor;
  return InteractionSpec(std::move(t));
}

SplitInteraction split(const InteractionSpec& h) {
  std::vector<GaussianTerm> plus;
  std::vector<GaussianTerm> minus;
  for (const GaussianTerm& g : h.terms()) {
    if (g.c > 0.0) {
      plus.push_back(g);
    } else if (g.c < 0.0) {
      minus.push_back({-g.c, g.sigma});
    }
  }
  return {InteractionSpec(std::move(plus)), InteractionSpec(std::move(minus))};
}

}  // namespace edgestat
