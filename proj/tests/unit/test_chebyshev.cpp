#include <cmath>
#include <numbers>

#include "doctest.h"
#include "edgestat/chebyshev.hpp"

using namespace edgestat;

TEST_CASE("interpolation of exp is spectrally accurate") {
  auto f = [](double x) { return std::exp(x); };
  const ChebyshevSeries s = ChebyshevSeries::interpolate(f, 0.0, 2.0, 30);
  CHECK(s.max_residual(f) < 1e-14);
  CHECK(s(1.234) == doctest::Approx(std::exp(1.234)).epsilon(1e-14));
}

TEST_CASE("derivative and Taylor coefficients") {
  auto f = [](double x) { return std::sin(2 * x); };
  const ChebyshevSeries s = ChebyshevSeries::interpolate(f, -1.0, 3.0, 48);
  const ChebyshevSeries d = s.derivative();
  CHECK(d(0.7) == doctest::Approx(2 * std::cos(1.4)).epsilon(1e-12));
  const auto e = ChebyshevSeries::interpolate([](double x) { return std::exp(x); }, -1.0, 3.0, 48)
                     .taylor_coefficients(1.0, 6);
  double fact = 1.0;
  for (int k = 0; k <= 6; ++k) {
    if (k > 0) fact *= k;
    CHECK(e[k] == doctest::Approx(std::numbers::e / fact).epsilon(1e-9));
  }
}

TEST_CASE("polynomials are reproduced exactly") {
  auto p = [](double x) { return 3 - x + 2 * x * x * x; };
  const ChebyshevSeries s = ChebyshevSeries::interpolate(p, -2.0, 5.0, 3);
  for (double x : {-2.0, 0.0, 1.5, 5.0}) CHECK(s(x) == doctest::Approx(p(x)).epsilon(1e-13));
  const ChebyshevSeries d2 = s.derivative().derivative();
  CHECK(d2(1.0) == doctest::Approx(12.0).epsilon(1e-12));
}
