#include "edgestat/airy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "edgestat/errors.hpp"
#include "edgestat/fredholm.hpp"
#include "edgestat/quadrature.hpp"

namespace edgestat {

namespace {

// Double-double arithmetic, enough for the cancellation in the Maclaurin series.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

DD operator+(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

DD operator-(DD a) { return {-a.hi, -a.lo}; }
DD operator-(DD a, DD b) { return a + (-b); }

DD operator*(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

DD operator*(DD a, double b) {
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

DD operator/(DD a, double b) {
  const double q1 = a.hi / b;
  const DD p = two_prod(q1, b);
  const double r = ((a.hi - p.hi) - p.lo) + a.lo;
  return quick_two_sum(q1, r / b);
}

// Ai(0) and -Ai'(0) to double-double precision.
constexpr DD kC1{0.3550280538878172, 2.05233632436212e-17};
constexpr DD kC2{0.2588194037928068, -2.522243111610832e-17};

AiryValue airy_series(double x) {
  const DD x3 = two_prod(x, x) * x;
  // f = sum a_k, g = sum b_k with Ai = c1 f - c2 g; fp, gp hold f', g'.
  DD a{1.0, 0.0};
  DD b{x, 0.0};
  DD fp{0.0, 0.0};
  DD gp{1.0, 0.0};
  DD f = a;
  DD g = b;
  DD fps = fp;
  DD gps = gp;
  DD fp_term = DD{0.5, 0.0} * two_prod(x, x);  // k = 1 term of f'
  for (int k = 1; k < 200; ++k) {
    const double k3 = 3.0 * k;
    a = a * x3 / ((k3 - 1.0) * k3);
    b = b * x3 / (k3 * (k3 + 1.0));
    gp = gp * x3 / (k3 * (k3 - 2.0));
    if (k > 1) fp_term = fp_term * x3 / ((k3 - 1.0) * (k3 - 3.0));
    f = f + a;
    g = g + b;
    fps = fps + fp_term;
    gps = gps + gp;
    const double scale = std::max({1.0, std::abs(f.hi), std::abs(g.hi)});
    if (std::abs(a.hi) + std::abs(b.hi) + std::abs(fp_term.hi) + std::abs(gp.hi) < 1e-34 * scale &&
        k > 3) {
      break;
    }
  }
  const DD ai = kC1 * f - kC2 * g;
  const DD aip = kC1 * fps - kC2 * gps;
  return {x, ai.hi + ai.lo, aip.hi + aip.lo};
}

// Coefficients u_k, v_k of the asymptotic expansions, truncated where the terms stop decreasing.
struct AsymptoticSums {
  double u_even = 0.0;
  double u_odd = 0.0;
  double v_even = 0.0;
  double v_odd = 0.0;
  double u_all = 0.0;  // sum (-1)^k u_k / zeta^k
  double v_all = 0.0;
};

AsymptoticSums asymptotic_sums(double zeta) {
  AsymptoticSums s;
  double u = 1.0;
  double zk = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / (216.0 * k * (2.0 * k - 1.0));
      zk /= zeta;
    }
    const double v = (k == 0) ? 1.0 : -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
    const double tu = u * zk;
    const double tv = v * zk;
    const double mag = std::max(std::abs(tu), std::abs(tv));
    if (mag > prev) break;  // asymptotic series has started to diverge
    prev = mag;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s.u_all += sign * tu;
    s.v_all += sign * tv;
    const double pair_sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      s.u_even += pair_sign * tu;
      s.v_even += pair_sign * tv;
    } else {
      s.u_odd += pair_sign * tu;
      s.v_odd += pair_sign * tv;
    }
    if (mag < 1e-18) break;
  }
  return s;
}

AiryValue airy_positive_asymptotic(double x) {
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  const AsymptoticSums s = asymptotic_sums(zeta);
  const double e = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
  const double q = std::sqrt(std::sqrt(x));
  return {x, e / q * s.u_all, -e * q * s.v_all};
}

AiryValue airy_negative_asymptotic(double x) {
  const double y = -x;
  const double zeta = 2.0 / 3.0 * y * std::sqrt(y);
  const AsymptoticSums s = asymptotic_sums(zeta);
  const double phase = zeta - 0.25 * std::numbers::pi;
  const double c = std::cos(phase);
  const double sn = std::sin(phase);
  const double q = std::sqrt(std::sqrt(y));
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  return {x, inv_sqrt_pi / q * (c * s.u_even + sn * s.u_odd),
          inv_sqrt_pi * q * (sn * s.v_even - c * s.v_odd)};
}

double truncation_point(double s) {
  // Right end X with K_Ai(X, X) below 1e-16 of the kernel scale at the left end.
  const double s0 = std::max(s, 0.0);
  const AiryValue a0 = airy(s0);
  const double ref = std::min(1.0, a0.aip * a0.aip - s0 * a0.ai * a0.ai);
  double X = s0;
  while (X < 39.75) {
    X += 0.25;
    const AiryValue a = airy(X);
    if (a.aip * a.aip - X * a.ai * a.ai < 1e-16 * ref) break;
  }
  return X;
}

TracyWidomValue tracy_widom_once(double s, double X, int m, TracyWidomMapping mapping) {
  QuadratureRule rule;
  if (mapping == TracyWidomMapping::Quadratic) {
    const QuadratureRule u = gauss_legendre(m, 0.0, 1.0);
    const double delta = X - s;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i) {
      rule.nodes[i] = s + delta * u.nodes[i] * u.nodes[i];
      rule.weights[i] = u.weights[i] * 2.0 * delta * u.nodes[i];
    }
  } else {
    rule = gauss_legendre(m, s, X);
  }
  std::vector<AiryValue> values(m);
  for (int i = 0; i < m; ++i) values[i] = airy(rule.nodes[i]);
  Eigen::MatrixXd A(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = std::sqrt(rule.weights[i] * rule.weights[j]) * airy_kernel(values[i], values[j]);
      A(i, j) = v;
      A(j, i) = v;
    }
  }
  const FredholmDeterminant d = fredholm_determinant(A);
  TracyWidomValue out;
  out.s = s;
  out.F2 = d.det;
  out.one_minus_F2 = d.one_minus_det;
  out.log_F2 = d.log_det;
  out.truncation = X;
  return out;
}

}  // namespace

AiryValue airy(double t) {
  if (!(t >= -12.0 && t <= 40.0)) {
    throw NumericalError(ErrorCode::OutOfRange, "airy: t = " + std::to_string(t) + " outside [-12, 40]");
  }
  if (std::abs(t) <= 9.0) return airy_series(t);
  return t > 0.0 ? airy_positive_asymptotic(t) : airy_negative_asymptotic(t);
}

double airy_kernel(const AiryValue& s, const AiryValue& t) {
  const double d = s.t - t.t;
  if (std::abs(d) > 1e-4) return (t.ai * s.aip - t.aip * s.ai) / (t.t - s.t);
  // Taylor expansion in s about the diagonal; d^2 K/ds^2 at s = t equals int_t^inf x Ai(x)^2 dx.
  const double x = t.t;
  const double k0 = t.aip * t.aip - x * t.ai * t.ai;
  const double k1 = -0.5 * t.ai * t.ai;
  const double k2 = (x * t.aip * t.aip - x * x * t.ai * t.ai - t.ai * t.aip) / 3.0;
  return k0 + d * k1 + 0.5 * d * d * k2;
}

double airy_kernel(double s, double t) { return airy_kernel(airy(s), airy(t)); }

TracyWidomValue tracy_widom(double s, const TracyWidomOptions& options) {
  if (!(s >= -8.0 && s <= 12.0)) {
    throw NumericalError(ErrorCode::OutOfRange, "tracy_widom: s outside [-8, 12]");
  }
  const double X = truncation_point(s);
  TracyWidomValue v = tracy_widom_once(s, X, options.nodes, options.mapping);
  if (options.check_doubling) {
    const TracyWidomValue w = tracy_widom_once(s, X, 2 * options.nodes, options.mapping);
    v.doubling_change = std::abs(w.F2 - v.F2);
    if (v.doubling_change > 1e-8) {
      throw NumericalError(ErrorCode::QuadratureUnstable,
                           "F2 changes by " + std::to_string(v.doubling_change) + " when nodes double");
    }
  }
  return v;
}

double log_tw_tail_asymptotic(double s) {
  const double s32 = s * std::sqrt(s);
  return -4.0 / 3.0 * s32 - std::log(16.0 * std::numbers::pi * s32);
}

double tw_tail_asymptotic(double s) { return std::exp(log_tw_tail_asymptotic(s)); }

}  // namespace edgestat
