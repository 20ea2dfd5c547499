#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "check.hpp"
#include "doctest.h"
#include "edgestat/airy.hpp"
#include "edgestat/errors.hpp"
#include "edgestat/quadrature.hpp"

using namespace edgestat;
using edgestat::testing::near_abs;
using edgestat::testing::near_rel;

namespace {

double envelope(double t) {
  // Size of Ai and Ai' on the oscillatory side: |t|^{1/4} / sqrt(pi).
  return std::pow(std::abs(t), 0.25) / std::sqrt(std::numbers::pi);
}

// Ai'' by a five-point difference of Ai', independent of the ODE.
double second_derivative(double t) {
  const double h = 1e-3;
  return (-airy(t + 2 * h).aip + 8 * airy(t + h).aip - 8 * airy(t - h).aip + airy(t - 2 * h).aip) /
         (12 * h);
}

}  // namespace

TEST_CASE("Ai(0) and Ai'(0) closed forms") {
  const AiryValue a = airy(0.0);
  CHECK(a.ai == doctest::Approx(std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0)).epsilon(1e-15));
  CHECK(a.ai == doctest::Approx(0.355028053887817).epsilon(1e-14));
  CHECK(a.aip == doctest::Approx(-std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("Airy values against boost on the series range") {
  for (int i = 0; i <= 360; ++i) {
    const double t = -9.0 + 0.05 * i;
    const AiryValue a = airy(t);
    CHECK(near_abs(a.ai, boost::math::airy_ai(t), 1e-12));
    CHECK(near_abs(a.aip, boost::math::airy_ai_prime(t), 1e-12));
  }
}

TEST_CASE("Airy values against boost beyond the series range") {
  for (double t = 9.05; t <= 40.0; t += 0.37) {
    const AiryValue a = airy(t);
    CHECK(near_rel(a.ai, boost::math::airy_ai(t), 1e-9));
    CHECK(near_rel(a.aip, boost::math::airy_ai_prime(t), 1e-9));
  }
  for (double t = -9.05; t >= -12.0; t -= 0.07) {
    const AiryValue a = airy(t);
    CHECK(near_abs(a.ai, boost::math::airy_ai(t), 1e-9 * envelope(t)));
    CHECK(near_abs(a.aip, boost::math::airy_ai_prime(t), 1e-9 * envelope(t) * std::sqrt(-t)));
  }
}

TEST_CASE("Airy range is enforced") {
  CHECK_THROWS_AS(airy(-12.5), NumericalError);
  CHECK_THROWS_AS(airy(41.0), NumericalError);
}

TEST_CASE("continuity across the series / asymptotic switch") {
  for (double t : {-9.0, 9.0}) {
    const AiryValue in = airy(t);
    const AiryValue out = airy(t + (t > 0 ? 1e-12 : -1e-12));
    CHECK(near_abs(in.ai, out.ai, 1e-12));
    CHECK(near_abs(in.aip, out.aip, 1e-11));
  }
}

TEST_CASE("large-t normalisation") {
  const double t = 25.0;
  const double leading = std::exp(-2.0 / 3.0 * std::pow(t, 1.5)) / std::sqrt(4 * std::numbers::pi * std::sqrt(t));
  CHECK(std::abs(airy(t).ai / leading - 1.0) <= 1e-3);
}

TEST_CASE("ODE residual on [-10, 12]") {
  for (double t = -10.0; t <= 12.0; t += 0.1) {
    const AiryValue a = airy(t);
    const double scale = t > 0 ? std::max(std::abs(a.ai) * (1 + t), 1e-300) : 1.0;
    CHECK(std::abs(second_derivative(t) - t * a.ai) <= 1e-9 * scale);
  }
}

TEST_CASE("Airy kernel diagonal and symmetry") {
  CHECK(airy_kernel(0.0, 0.0) == doctest::Approx(0.066987483779664).epsilon(1e-12));
  // K_Ai(0, 0) = int_0^inf Ai(r)^2 dr.
  AdaptiveOptions opt;
  opt.rel_tol = 1e-13;
  const double integral = adaptive_gauss_legendre([](double r) { return std::pow(airy(r).ai, 2); }, 0.0, 30.0, opt);
  CHECK(near_rel(integral, airy_kernel(0.0, 0.0), 1e-11));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-6, 8);
  for (int i = 0; i < 100; ++i) {
    const double s = u(rng);
    const double t = u(rng);
    CHECK(airy_kernel(s, t) == doctest::Approx(airy_kernel(t, s)).epsilon(1e-13));
  }
}

TEST_CASE("kernel is continuous across the diagonal switch") {
  // Inside the switch the expansion must match the Christoffel-Darboux quotient at the same point.
  for (double t : {-3.0, 0.0, 1.5, 4.0}) {
    const double s = t + 0.99e-4;
    const AiryValue as = airy(s);
    const AiryValue at = airy(t);
    const double quotient = (at.ai * as.aip - at.aip * as.ai) / (t - s);
    CHECK(std::abs(airy_kernel(s, t) - quotient) <= 1e-9);
  }
}

TEST_CASE("Christoffel-Darboux form equals the integral representation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 4);
  AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  for (int i = 0; i < 20; ++i) {
    const double s = u(rng);
    const double t = u(rng);
    const double integral =
        adaptive_gauss_legendre([&](double r) { return airy(s + r).ai * airy(t + r).ai; }, 0.0, 30.0, opt);
    CHECK(near_abs(integral, airy_kernel(s, t), 1e-7));
  }
}

TEST_CASE("Airy kernel decay sandwich on [1, 20]^2") {
  double lo = 1e300;
  double hi = 0.0;
  for (double s = 1.0; s <= 20.0; s += 0.5) {
    for (double t = 1.0; t <= 20.0; t += 0.5) {
      const double v = airy_kernel(s, t) * std::pow(s * t, 0.25) * (std::sqrt(s) + std::sqrt(t)) *
                       std::exp(2.0 / 3.0 * (std::pow(s, 1.5) + std::pow(t, 1.5)));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double C = 20.0;
  CHECK(lo >= 1.0 / C);
  CHECK(hi <= C);
}

TEST_CASE("Tracy-Widom values against an independent Nystrom evaluation") {
  // Reference values from a separate dense Gauss-Legendre discretisation (160 nodes).
  const std::pair<double, double> ref[] = {{-3, 0.080319552939333}, {-2, 0.413224142505113},
                                           {-1, 0.807214241999278}, {0, 0.969372828355261},
                                           {1, 0.997505438149389},  {2, 0.999887553698309},
                                           {3, 0.999997005956608}};
  for (auto [s, v] : ref) CHECK(near_abs(tracy_widom(s).F2, v, 1e-9));
  CHECK(near_rel(tracy_widom(6.0).one_minus_F2, 3.81723265900992e-12, 1e-6));
}

TEST_CASE("Tracy-Widom limits and tail") {
  CHECK(tracy_widom(8.0).F2 >= 1.0 - 1e-9);
  const TracyWidomValue v6 = tracy_widom(6.0);
  CHECK(std::abs(v6.one_minus_F2 / tw_tail_asymptotic(6.0) - 1.0) <= 0.10);
  CHECK_THROWS_AS(tracy_widom(-9.0), NumericalError);
}

TEST_CASE("two Nystrom schemes agree") {
  TracyWidomOptions a;
  a.nodes = 50;
  a.mapping = TracyWidomMapping::Quadratic;
  a.check_doubling = false;
  TracyWidomOptions b;
  b.nodes = 100;
  b.mapping = TracyWidomMapping::Linear;
  b.check_doubling = false;
  for (double s : {-2.0, 0.0, 2.0}) CHECK(near_abs(tracy_widom(s, a).F2, tracy_widom(s, b).F2, 1e-7));
}

TEST_CASE("F2 is a distribution function") {
  double prev = 0.0;
  for (double s = -8.0; s <= 12.0; s += 0.25) {
    const TracyWidomValue v = tracy_widom(s);
    CHECK(v.F2 >= 0.0);
    CHECK(v.F2 <= 1.0);
    CHECK(v.F2 >= prev);
    prev = v.F2;
  }
}

TEST_CASE("tail asymptotic") {
  const double s = 6.0;
  CHECK(tw_tail_asymptotic(s) == doctest::Approx(std::exp(-19.5959) / (16 * std::numbers::pi * 14.6969)).epsilon(1e-4));
  CHECK(log_tw_tail_asymptotic(s) ==
        -4.0 / 3.0 * s * std::sqrt(s) - std::log(16 * std::numbers::pi * s * std::sqrt(s)));
  double prev = 1e300;
  for (double t = 0.5; t < 20; t += 0.5) {
    CHECK(tw_tail_asymptotic(t) < prev);
    prev = tw_tail_asymptotic(t);
  }
}
