#include <cmath>
#include <numbers>
#include <random>

#include "check.hpp"
#include "doctest.h"
#include "edgestat/errors.hpp"
#include "edgestat/fields.hpp"
#include "edgestat/quadrature.hpp"

using namespace edgestat;
using edgestat::testing::near_abs;

namespace {

// (2 pi)^{-1/2} int e^{-its} h(s) ds for even h, by plain adaptive quadrature of the cosine transform.
double numeric_transform(const InteractionSpec& h, double t) {
  AdaptiveOptions opt;
  opt.rel_tol = 1e-14;
  opt.abs_tol = 1e-15;
  double smax = 0.0;
  for (const auto& g : h.terms()) smax = std::max(smax, g.sigma);
  const double S = 40.0 * smax;
  const double v = adaptive_gauss_legendre([&](double s) { return std::cos(t * s) * h.h(s); }, -S, S, opt);
  return v / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

TEST_CASE("alpha_Q on sample polynomials") {
  CHECK(alpha_Q(ConfiningField({0, 0, 1}), 3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(alpha_Q(ConfiningField({0, 0, 1, 0, 1}), 3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(alpha_Q(ConfiningField({0, 0, 0, 0, 1}), 3.0), NumericalError);
  try {
    (void)alpha_Q(ConfiningField({0, 0, 0, 0, 1}), 3.0);
  } catch (const NumericalError& e) {
    CHECK(e.code() == ErrorCode::NonConvex);
  }
}

TEST_CASE("alpha_Q finds an interior minimum of Q''") {
  // Q'' = 2 - 12 x^2 + 30 x^4 is smallest at x^2 = 1/5.
  const ConfiningField q({0, 0, 1, 0, -1, 0, 1});
  const double x2 = 12.0 / 60.0;
  const double expected = 2 - 12 * x2 + 30 * x2 * x2;
  const ConvexityReport r = convexity_report(q, 2.0);
  CHECK(r.alpha == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::abs(std::abs(r.argmin) - std::sqrt(x2)) < 1e-7);
  CHECK(r.global);
}

TEST_CASE("ConfiningField validation") {
  CHECK_THROWS_AS(ConfiningField({0, 1, 1}), ValidationError);
  CHECK_THROWS_AS(ConfiningField({0, 0, -1}), ValidationError);
  std::vector<double> degree14(15, 0.0);
  degree14[14] = 1.0;
  CHECK_THROWS_AS(ConfiningField{degree14}, ValidationError);
  CHECK_THROWS_AS(ConfiningField({}), ValidationError);
  CHECK_NOTHROW(ConfiningField({5, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}));
}

TEST_CASE("fourier_h closed forms") {
  const InteractionSpec g({{1.0, 1.0}});
  for (double t : {0.0, 0.3, 1.0, 2.5}) CHECK(fourier_h(g, t) == doctest::Approx(std::exp(-t * t / 2)));
  CHECK(fourier_h(InteractionSpec(), 1.3) == 0.0);
  const InteractionSpec m({{-1.0, 1.0}});
  CHECK(fourier_h(m, 0.8) == doctest::Approx(-std::exp(-0.32)));
  CHECK(m.negative_definite());
  CHECK_FALSE(m.positive_definite());
}

TEST_CASE("closed-form transform agrees with quadrature at 20 points") {
  const InteractionSpec h({{0.7, 0.6}, {-0.3, 1.7}, {0.05, 0.25}});
  for (int i = 0; i < 20; ++i) {
    const double t = 0.25 * i;
    CHECK(near_abs(h.fourier(t), numeric_transform(h, t), 1e-10));
  }
}

TEST_CASE("evenness is exact") {
  const InteractionSpec h({{0.7, 0.6}, {-0.3, 1.7}});
  const ConfiningField q({0.1, 0, 1, 0, 0.3, 0, 0.01});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng);
    CHECK(h.h(t) == h.h(-t));
    CHECK(q.value(t) == q.value(-t));
  }
}

TEST_CASE("split partitions the terms by sign") {
  const InteractionSpec h({{1.0, 1.0}, {-0.5, 2.0}});
  const SplitInteraction s = split(h);
  REQUIRE(s.plus.terms().size() == 1);
  REQUIRE(s.minus.terms().size() == 1);
  CHECK(s.plus.terms()[0].c == 1.0);
  CHECK(s.minus.terms()[0].c == 0.5);
  CHECK(s.minus.terms()[0].sigma == 2.0);
  CHECK(s.plus.positive_definite());
  CHECK(s.minus.positive_definite());
  for (int i = 0; i < 100; ++i) {
    const double t = -5.0 + 0.1 * i;
    CHECK(near_abs(s.plus.h(t) - s.minus.h(t), h.h(t), 1e-14));
    CHECK(near_abs(s.plus.fourier(t) - s.minus.fourier(t), h.fourier(t), 1e-14));
  }
  const SplitInteraction n = split(InteractionSpec({{-0.1, 1.0}}));
  CHECK(n.plus.terms().empty());
  CHECK(n.plus.h(0.3) == 0.0);
}

TEST_CASE("sup of -h''") {
  CHECK(InteractionSpec({{1.0, 1.0}}).sup_neg_h2() == doctest::Approx(1.0).epsilon(1e-12));
  // -h'' = (t^2 - 1) e^{-t^2/2} peaks at t^2 = 3.
  CHECK(InteractionSpec({{-1.0, 1.0}}).sup_neg_h2() ==
        doctest::Approx(2.0 * std::exp(-1.5)).epsilon(1e-12));
}

TEST_CASE("derivatives of h match finite differences") {
  const InteractionSpec h({{0.7, 0.6}, {-0.3, 1.7}});
  const double e = 1e-5;
  for (double t : {-1.3, 0.0, 0.4, 2.2}) {
    CHECK(near_abs(h.d1(t), (h.h(t + e) - h.h(t - e)) / (2 * e), 1e-9));
    CHECK(near_abs(h.d2(t), (h.d1(t + e) - h.d1(t - e)) / (2 * e), 1e-9));
  }
}
