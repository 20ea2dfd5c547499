#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "edgestat/errors.hpp"
#include "edgestat/quadrature.hpp"

using namespace edgestat;

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {1, 2, 5, 16, 64}) {
    const QuadratureRule r = gauss_legendre(n, -1.0, 2.0);
    const int d = 2 * n - 1;
    const double exact = (std::pow(2.0, d + 1) - std::pow(-1.0, d + 1)) / (d + 1);
    CHECK(r.integrate([&](double x) { return std::pow(x, d); }) ==
          doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("gauss_legendre on a smooth function") {
  const QuadratureRule r = gauss_legendre(20, 0.0, 1.0);
  CHECK(r.integrate([](double x) { return std::exp(x); }) ==
        doctest::Approx(std::numbers::e - 1.0).epsilon(1e-15));
}

TEST_CASE("Chebyshev rules carry their weight functions") {
  const QuadratureRule c1 = gauss_chebyshev_first(12);
  const QuadratureRule c2 = gauss_chebyshev_second(12);
  // int x^2 / sqrt(1-x^2) = pi/2 and int x^2 sqrt(1-x^2) = pi/8.
  CHECK(c1.integrate([](double x) { return x * x; }) == doctest::Approx(std::numbers::pi / 2));
  CHECK(c2.integrate([](double x) { return x * x; }) == doctest::Approx(std::numbers::pi / 8));
  CHECK(c2.integrate([](double) { return 1.0; }) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("graded rule covers the interval") {
  const QuadratureRule r = graded_gauss_legendre(1.0, 7.3, 0.01, 10);
  const double total = std::accumulate(r.weights.begin(), r.weights.end(), 0.0);
  CHECK(total == doctest::Approx(6.3).epsilon(1e-14));
  CHECK(r.integrate([](double x) { return std::exp(-x); }) ==
        doctest::Approx(std::exp(-1.0) - std::exp(-7.3)).epsilon(1e-14));
  CHECK(graded_gauss_legendre(2.0, 2.0, 0.1, 5).size() == 0);
}

TEST_CASE("adaptive integration handles endpoint singular behaviour") {
  CHECK(adaptive_gauss_legendre([](double x) { return std::sqrt(x); }, 0.0, 1.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-11));
  CHECK(adaptive_gauss_legendre([](double x) { return std::cos(40 * x); }, 0.0, 3.0) ==
        doctest::Approx(std::sin(120.0) / 40.0).epsilon(1e-11));
  CHECK(adaptive_gauss_legendre([](double) { return 0.0; }, 0.0, 1.0) == 0.0);
}

TEST_CASE("adaptive integration reports failure") {
  AdaptiveOptions opt;
  opt.max_depth = 3;
  CHECK_THROWS_AS(adaptive_gauss_legendre([](double x) { return 1.0 / x; }, 1e-300, 1.0, opt),
                  NumericalError);
}

TEST_CASE("pairwise_sum is exact on integers and stable on many terms") {
  std::vector<double> v(1000);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(pairwise_sum(v) == 500500.0);
  std::vector<double> tiny(1 << 20, 0.1);
  CHECK(std::abs(pairwise_sum(tiny) - 0.1 * (1 << 20)) < 1e-8);
}
