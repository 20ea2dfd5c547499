#include "edgestat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <stdexcept>

#include "edgestat/errors.hpp"

namespace edgestat {

namespace {

// Legendre P_n and its derivative at x by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

struct Panel {
  double a;
  double b;
  double estimate;
  double error;
  int depth;
  bool operator<(const Panel& other) const { return error < other.error; }
};

QuadratureRule compute_gauss_legendre(int n, double a, double b) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      auto [p, d] = legendre_with_derivative(n, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    dp = legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = w * half;
    rule.weights[n - 1 - i] = w * half;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = mid;
  return rule;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  // Reference rules are reused heavily by the recurrence and Nystrom code.
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  QuadratureRule ref;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n, -1.0, 1.0)).first;
    ref = it->second;
  }
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (int i = 0; i < n; ++i) {
    ref.nodes[i] = mid + half * ref.nodes[i];
    ref.weights[i] *= half;
  }
  return ref;
}

QuadratureRule gauss_chebyshev_first(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.assign(n, std::numbers::pi / n);
  for (int k = 0; k < n; ++k) rule.nodes[k] = std::cos(std::numbers::pi * (k + 0.5) / n);
  return rule;
}

QuadratureRule gauss_chebyshev_second(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int k = 1; k <= n; ++k) {
    const double theta = std::numbers::pi * k / (n + 1);
    const double s = std::sin(theta);
    rule.nodes[k - 1] = std::cos(theta);
    rule.weights[k - 1] = std::numbers::pi / (n + 1) * s * s;
  }
  return rule;
}

QuadratureRule graded_gauss_legendre(double a, double b, double first_width, int nodes_per_panel) {
  QuadratureRule rule;
  if (!(b > a)) return rule;
  const QuadratureRule ref = gauss_legendre(nodes_per_panel);
  double left = a;
  double width = std::min(first_width, b - a);
  while (left < b) {
    double right = left + width;
    // Absorb a thin remainder into the last panel.
    if (right > b || (b - right) < 0.5 * width) right = b;
    const double half = 0.5 * (right - left);
    const double mid = 0.5 * (right + left);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      rule.nodes.push_back(mid + half * ref.nodes[i]);
      rule.weights.push_back(half * ref.weights[i]);
    }
    left = right;
    width *= 2.0;
  }
  return rule;
}

double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                               const AdaptiveOptions& options) {
  if (a == b) return 0.0;
  const QuadratureRule ref = gauss_legendre(options.order);
  auto panel_sum = [&](double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) s += ref.weights[i] * f(mid + half * ref.nodes[i]);
    return s * half;
  };
  auto make_panel = [&](double lo, double hi, int depth) {
    const double whole = panel_sum(lo, hi);
    const double mid = 0.5 * (lo + hi);
    const double halves = panel_sum(lo, mid) + panel_sum(mid, hi);
    return Panel{lo, hi, halves, std::abs(halves - whole), depth};
  };

  std::priority_queue<Panel> queue;
  queue.push(make_panel(a, b, 0));
  double total = queue.top().estimate;
  double error = queue.top().error;
  int evaluations = 0;
  while (!queue.empty()) {
    const double tol = std::max(options.abs_tol, options.rel_tol * std::abs(total));
    if (error <= tol) break;
    Panel worst = queue.top();
    if (worst.depth >= options.max_depth || ++evaluations > 20000) {
      throw NumericalError(ErrorCode::QuadratureFailure,
                           "adaptive Gauss-Legendre did not reach the requested tolerance");
    }
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = make_panel(worst.a, mid, worst.depth + 1);
    const Panel right = make_panel(mid, worst.b, worst.depth + 1);
    total += left.estimate + right.estimate - worst.estimate;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum the leaves to drop the accumulated update rounding.
  double sum = 0.0;
  while (!queue.empty()) {
    sum += queue.top().estimate;
    queue.pop();
  }
  return sum;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace edgestat
