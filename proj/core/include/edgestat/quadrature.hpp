#ifndef EDGESTAT_QUADRATURE_HPP
#define EDGESTAT_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

namespace edgestat {

/// Nodes and weights of an interpolatory rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }

  template <class F>
  [[nodiscard]] double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Gauss-Chebyshev rule of the first kind: integrates g(x)/sqrt(1-x^2) on [-1, 1].
QuadratureRule gauss_chebyshev_first(int n);

/// Gauss-Chebyshev rule of the second kind: integrates g(x)*sqrt(1-x^2) on [-1, 1].
QuadratureRule gauss_chebyshev_second(int n);

/// Composite Gauss-Legendre rule on [a, b] whose panels grow geometrically
/// (ratio 2) away from `a`, starting with a panel of width `first_width`.
/// Panels hold `nodes_per_panel` points each.
QuadratureRule graded_gauss_legendre(double a, double b, double first_width, int nodes_per_panel);

struct AdaptiveOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int order = 15;
  int max_depth = 40;
};

/// Globally adaptive Gauss-Legendre integration: a panel is split in two
/// until the two-halves estimate agrees with the whole-panel one.
double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                               const AdaptiveOptions& options = {});

/// Sum in a fixed binary-tree order; the result only depends on the order of
/// the input, and the rounding error grows like log(n).
double pairwise_sum(std::span<const double> values);

}  // namespace edgestat

#endif  // EDGESTAT_QUADRATURE_HPP
