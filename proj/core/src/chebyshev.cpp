#include "edgestat/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace edgestat {

ChebyshevSeries::ChebyshevSeries(double lo, double hi, std::vector<double> coefficients)
    : lo_(lo), hi_(hi), coefficients_(std::move(coefficients)) {
  if (!(hi > lo)) throw std::invalid_argument("ChebyshevSeries: empty interval");
}

ChebyshevSeries ChebyshevSeries::interpolate(const std::function<double(double)>& f, double lo,
                                             double hi, int degree) {
  if (degree < 1) throw std::invalid_argument("ChebyshevSeries: degree must be >= 1");
  const int n = degree;
  std::vector<double> values(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double y = std::cos(std::numbers::pi * j / n);
    values[j] = f(0.5 * (hi + lo) + 0.5 * (hi - lo) * y);
  }
  // Discrete cosine transform (type I), O(n^2) is fine for the sizes used here.
  std::vector<double> c(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double w = (j == 0 || j == n) ? 0.5 : 1.0;
      s += w * values[j] * std::cos(std::numbers::pi * ((static_cast<long>(k) * j) % (2 * n)) / n);
    }
    c[k] = 2.0 * s / n;
  }
  c[0] *= 0.5;
  c[n] *= 0.5;
  return ChebyshevSeries(lo, hi, std::move(c));
}

double ChebyshevSeries::operator()(double x) const {
  if (coefficients_.empty()) return 0.0;
  const double y = (2.0 * x - (hi_ + lo_)) / (hi_ - lo_);
  // Clenshaw.
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = coefficients_.size() - 1; k >= 1; --k) {
    const double b0 = 2.0 * y * b1 - b2 + coefficients_[k];
    b2 = b1;
    b1 = b0;
  }
  return y * b1 - b2 + coefficients_[0];
}

ChebyshevSeries ChebyshevSeries::derivative() const {
  const int n = degree();
  if (n < 1) return ChebyshevSeries(lo_, hi_, {0.0});
  std::vector<double> d(n + 1, 0.0);
  for (int k = n - 1; k >= 0; --k) {
    d[k] = (k + 2 <= n ? d[k + 2] : 0.0) + 2.0 * (k + 1) * coefficients_[k + 1];
  }
  d[0] *= 0.5;
  d.pop_back();
  const double scale = 2.0 / (hi_ - lo_);
  for (double& v : d) v *= scale;
  if (d.empty()) d.push_back(0.0);
  return ChebyshevSeries(lo_, hi_, std::move(d));
}

std::vector<double> ChebyshevSeries::taylor_coefficients(double x, int order) const {
  std::vector<double> out;
  out.reserve(order + 1);
  ChebyshevSeries current = *this;
  double factorial = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) {
      current = current.derivative();
      factorial *= k;
    }
    out.push_back(current(x) / factorial);
  }
  return out;
}

double ChebyshevSeries::max_residual(const std::function<double(double)>& f, int samples) const {
  double worst = 0.0;
  const int n = std::max(degree(), 1);
  for (int i = 0; i < samples; ++i) {
    // Midpoints (in angle) between consecutive Lobatto nodes, cycling through the interval.
    const int j = (i * 7919) % n;
    const double y = std::cos(std::numbers::pi * (j + 0.5) / n);
    const double x = 0.5 * (hi_ + lo_) + 0.5 * (hi_ - lo_) * y;
    worst = std::max(worst, std::abs(f(x) - (*this)(x)));
  }
  return worst;
}

void ChebyshevSeries::make_even() {
  for (std::size_t k = 1; k < coefficients_.size(); k += 2) coefficients_[k] = 0.0;
}

}  // namespace edgestat
