#ifndef EDGESTAT_CHEBYSHEV_HPP
#define EDGESTAT_CHEBYSHEV_HPP

#include <functional>
#include <vector>

namespace edgestat {

/// Truncated Chebyshev series sum_k c_k T_k(y) on an interval [lo, hi],
/// with y the affine image of x in [-1, 1].
class ChebyshevSeries {
 public:
  ChebyshevSeries() = default;
  ChebyshevSeries(double lo, double hi, std::vector<double> coefficients);

  /// Interpolates f at the degree+1 Chebyshev extrema (Lobatto points).
  static ChebyshevSeries interpolate(const std::function<double(double)>& f, double lo, double hi,
                                     int degree);

  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] ChebyshevSeries derivative() const;

  /// Taylor coefficients f^(k)(x)/k! for k = 0..order.
  [[nodiscard]] std::vector<double> taylor_coefficients(double x, int order) const;

  /// Max |f - this| over `samples` points placed between the interpolation nodes.
  [[nodiscard]] double max_residual(const std::function<double(double)>& f, int samples = 97) const;

  /// Zero the odd coefficients; valid when the interval is symmetric and f is even.
  void make_even();

  [[nodiscard]] double lo() const noexcept { return lo_; }
  [[nodiscard]] double hi() const noexcept { return hi_; }
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  [[nodiscard]] const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  [[nodiscard]] bool empty() const noexcept { return coefficients_.empty(); }

 private:
  double lo_ = -1.0;
  double hi_ = 1.0;
  std::vector<double> coefficients_;
};

}  // namespace edgestat

#endif  // EDGESTAT_CHEBYSHEV_HPP
