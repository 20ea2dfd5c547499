#include "edgestat/cdkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "edgestat/errors.hpp"
#include "edgestat/fredholm.hpp"
#include "edgestat/quadrature.hpp"

namespace edgestat {

namespace {

constexpr double kRescale = 1e100;

// Lanczos iteration for diag(x) started from sqrt(w): the discretised Stieltjes
// procedure carried on orthonormal vectors q_k(x_i) = p_k(x_i) sqrt(w_i).
// Working with sqrt(w) keeps every stored quantity far from underflow, which the
// squared-weight RKPW sweep does not once the weights span e^{-400}.
// Takes sqrt(w_i); returns alpha[0..n-1] and beta[0..n-1] with beta[0] = sum w_i.
void lanczos(const std::vector<double>& x, const std::vector<double>& sw, int n, std::vector<double>& alpha,
             std::vector<double>& beta) {
  const std::size_t m = x.size();
  alpha.assign(n, 0.0);
  beta.assign(n, 0.0);
  std::vector<double> prev(m, 0.0);
  std::vector<double> cur(m);
  double mass = 0.0;
  for (std::size_t i = 0; i < m; ++i) mass += sw[i] * sw[i];
  beta[0] = mass;
  const double inv = 1.0 / std::sqrt(mass);
  for (std::size_t i = 0; i < m; ++i) cur[i] = sw[i] * inv;
  double b_prev = 0.0;
  std::vector<double> next(m);
  for (int k = 0; k < n; ++k) {
    double a = 0.0;
    for (std::size_t i = 0; i < m; ++i) a += x[i] * cur[i] * cur[i];
    alpha[k] = a;
    if (k + 1 == n) break;
    for (std::size_t i = 0; i < m; ++i) next[i] = (x[i] - a) * cur[i] - b_prev * prev[i];
    // One reorthogonalisation pass against the two previous vectors.
    double c0 = 0.0;
    double c1 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      c0 += next[i] * cur[i];
      c1 += next[i] * prev[i];
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      next[i] -= c0 * cur[i] + c1 * prev[i];
      nrm += next[i] * next[i];
    }
    const double b = std::sqrt(nrm);
    beta[k + 1] = nrm;
    if (!(b > 0.0)) return;
    for (std::size_t i = 0; i < m; ++i) {
      prev[i] = cur[i];
      cur[i] = next[i] / b;
    }
    b_prev = b;
  }
}

struct GridResult {
  std::vector<double> alpha;
  std::vector<double> beta;
  double log_mass = 0.0;
};

GridResult recurrence_on_grid(const WeightSpec& w, int n, int grid) {
  const QuadratureRule rule = gauss_legendre(grid, -w.L, w.L);
  std::vector<double> logw(rule.size());
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rule.size(); ++i) {
    logw[i] = w.log_weight(rule.nodes[i]);
    if (std::isnan(logw[i])) throw NumericalError(ErrorCode::Underflow, "weight is NaN on the grid");
    shift = std::max(shift, logw[i]);
  }
  if (!std::isfinite(shift)) throw NumericalError(ErrorCode::Underflow, "all grid weights vanish");
  std::vector<double> xs;
  std::vector<double> sws;  // sqrt of node weight times quadrature weight
  xs.reserve(rule.size());
  sws.reserve(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = std::exp(0.5 * (logw[i] - shift)) * std::sqrt(rule.weights[i]);
    if (v > 0.0) {
      xs.push_back(rule.nodes[i]);
      sws.push_back(v);
    }
  }
  if (static_cast<int>(xs.size()) < n + 1) {
    throw NumericalError(ErrorCode::Underflow, "too few grid points carry weight for degree " + std::to_string(n));
  }
  GridResult out;
  lanczos(xs, sws, n, out.alpha, out.beta);
  out.log_mass = std::log(out.beta[0]) + shift;
  out.beta[0] = 1.0;
  for (int k = 1; k < n; ++k) {
    if (!(out.beta[k] > 0.0)) {
      throw NumericalError(ErrorCode::Underflow, "non-positive recurrence coefficient beta_" + std::to_string(k));
    }
  }
  return out;
}

double log_partition_from(const std::vector<double>& beta, double log_mass, int N) {
  double s = std::lgamma(N + 1.0) + N * log_mass;
  for (int k = 1; k < N; ++k) s += (N - k) * std::log(beta[k]);
  return s;
}

}  // namespace

WeightSpec make_weight(std::shared_ptr<const EquilibriumSolution> sol, int N, double L,
                       std::function<double(double)> f) {
  WeightSpec w;
  w.N = N;
  w.L = L;
  w.V = [sol](double x) { return sol->field().value(x); };
  w.f = std::move(f);
  return w;
}

RecurrenceTable recurrence(const WeightSpec& w, int n, const RecurrenceOptions& options) {
  if (n < 1) throw ValidationError("recurrence: n must be positive");
  if (n > 500) throw ValidationError("recurrence: n exceeds the stability envelope of 500");
  if (!(w.L > 0.0) || !w.V) throw ValidationError("recurrence: weight needs L > 0 and a field");
  int grid = options.grid_size > 0 ? options.grid_size : std::max(8 * n + 200, 1000);
  // The default grid is uniform in the GL sense over [-L, L]; for a large L
  // relative to the support it under-resolves the oscillation of p_{n-1}^2 w,
  // so it is doubled a few times before giving up. Explicit sizes are not.
  const int escalations = options.grid_size > 0 ? 0 : 4;
  GridResult coarse = recurrence_on_grid(w, n, grid);
  RecurrenceTable table;
  table.grid_size = grid;
  if (options.check_refinement) {
    for (int attempt = 0;; ++attempt) {
      GridResult fine = recurrence_on_grid(w, n, 2 * grid);
      double change = 0.0;
      for (int k = 1; k < n; ++k) {
        change = std::max(change, std::abs(fine.beta[k] - coarse.beta[k]) / fine.beta[k]);
      }
      table.refinement_change = change;
      table.log_partition_change = std::abs(log_partition_from(fine.beta, fine.log_mass, n) -
                                            log_partition_from(coarse.beta, coarse.log_mass, n));
      coarse = std::move(fine);
      grid *= 2;
      table.grid_size = grid;
      if (change <= 1e-7) break;
      if (attempt >= escalations) {
        throw NumericalError(ErrorCode::GridTooCoarse,
                             "doubling the grid moves beta by " + std::to_string(change));
      }
    }
  }
  table.alpha = std::move(coarse.alpha);
  table.beta = std::move(coarse.beta);
  table.log_mass = coarse.log_mass;
  return table;
}

double log_partition(const RecurrenceTable& table, int N) {
  if (table.size() < N) throw ValidationError("log_partition: table shorter than N");
  return log_partition_from(table.beta, table.log_mass, N);
}

CDKernel::CDKernel(WeightSpec w, const RecurrenceOptions& options)
    : CDKernel(w, recurrence(w, w.N, options)) {}

CDKernel::CDKernel(WeightSpec w, RecurrenceTable table) : w_(std::move(w)), table_(std::move(table)) {
  if (w_.N < 2) throw ValidationError("CDKernel: N must be at least 2");
  if (table_.size() < w_.N) throw ValidationError("CDKernel: recurrence table shorter than N");
  sqrt_beta_.resize(w_.N);
  sqrt_beta_[0] = 1.0;
  for (int k = 1; k < w_.N; ++k) sqrt_beta_[k] = std::sqrt(table_.beta[k]);
}

CDKernel::Scaled CDKernel::scaled_polynomials(double t) const {
  const int N = w_.N;
  Scaled out;
  out.r.resize(N);
  out.log_scale = 0.5 * (w_.log_weight(t) - table_.log_mass);
  out.r[0] = 1.0;
  if (N > 1) out.r[1] = (t - table_.alpha[0]) * out.r[0] / sqrt_beta_[1];
  for (int k = 1; k + 1 < N; ++k) {
    double next = ((t - table_.alpha[k]) * out.r[k] - sqrt_beta_[k] * out.r[k - 1]) / sqrt_beta_[k + 1];
    if (std::abs(next) > kRescale) {
      for (int j = 0; j <= k; ++j) out.r[j] /= kRescale;
      next /= kRescale;
      out.log_scale += std::log(kRescale);
    }
    out.r[k + 1] = next;
  }
  return out;
}

std::vector<double> CDKernel::weighted_polynomials(double t) const {
  const Scaled s = scaled_polynomials(t);
  std::vector<double> q(s.r.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    q[j] = s.r[j] == 0.0 ? 0.0 : std::copysign(std::exp(s.log_scale + std::log(std::abs(s.r[j]))), s.r[j]);
  }
  return q;
}

double CDKernel::operator()(double s, double t) const {
  const Scaled a = scaled_polynomials(s);
  const Scaled b = (s == t) ? a : scaled_polynomials(t);
  double sum = 0.0;
  for (std::size_t j = 0; j < a.r.size(); ++j) sum += a.r[j] * b.r[j];
  if (sum == 0.0) return 0.0;
  return std::copysign(std::exp(a.log_scale + b.log_scale + std::log(std::abs(sum))), sum);
}

double CDKernel::diagonal(double t) const { return (*this)(t, t); }

double correlation(const CDKernel& K, std::span<const double> points) {
  const int k = static_cast<int>(points.size());
  if (k < 1 || k > 6) throw ValidationError("correlation: between 1 and 6 points");
  if (k > K.N()) return 0.0;
  Eigen::MatrixXd M(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = K(points[i], points[j]);
      M(i, j) = v;
      M(j, i) = v;
    }
  }
  const double det = Eigen::PartialPivLU<Eigen::MatrixXd>(M).determinant();
  return std::exp(std::lgamma(K.N() - k + 1.0) - std::lgamma(K.N() + 1.0)) * det;
}

double christoffel(const CDKernel& K, double t) {
  return std::exp(K.weight().log_weight(t) - std::log(K.diagonal(t)));
}

LogRatio log_partition_ratio(const RecurrenceTable& t1, const RecurrenceTable& t2, int N) {
  LogRatio r;
  r.value = log_partition(t1, N) - log_partition(t2, N);
  r.tolerance = t1.log_partition_change + t2.log_partition_change;
  return r;
}

LogRatio log_partition_ratio(const WeightSpec& w1, const WeightSpec& w2) {
  if (w1.N != w2.N || w1.L != w2.L) throw ValidationError("log_partition_ratio: N and L must match");
  return log_partition_ratio(recurrence(w1, w1.N), recurrence(w2, w2.N), w1.N);
}

namespace {

GapProbability gap_once(const CDKernel& K, double t, double T, int nodes) {
  const double width = T - t;
  const double first = std::min(width, 1.0 / K.N());
  const int panels = std::max(1, static_cast<int>(std::ceil(std::log2(width / first + 1.0))));
  const int per_panel = std::max(10, (nodes + panels - 1) / panels);
  const QuadratureRule rule = graded_gauss_legendre(t, T, first, per_panel);
  const int m = static_cast<int>(rule.size());
  const int N = K.N();
  Eigen::MatrixXd B(m, N);
  for (int i = 0; i < m; ++i) {
    const std::vector<double> q = K.weighted_polynomials(rule.nodes[i]);
    const double sw = std::sqrt(rule.weights[i]);
    for (int j = 0; j < N; ++j) B(i, j) = sw * q[j];
  }
  const Eigen::MatrixXd A = B * B.transpose();
  const FredholmDeterminant d = fredholm_determinant(A);
  GapProbability g;
  g.probability = d.det;
  g.one_minus = d.one_minus_det;
  g.log_probability = d.log_det;
  g.truncation = T;
  return g;
}

}  // namespace

GapProbability gap_probability(const CDKernel& K, double t, double L, const GapOptions& options) {
  if (t >= L) return {};
  // The kernel diagonal decays super-exponentially beyond the support; stop where it is negligible.
  const int scan = 400;
  double peak = 0.0;
  double T = L;
  for (int i = 0; i <= scan; ++i) {
    const double y = t + (L - t) * i / scan;
    const double d = K.diagonal(y);
    peak = std::max(peak, d);
    if (i > 0 && d < 1e-17 * peak) {
      T = y;
      break;
    }
  }
  GapProbability g = gap_once(K, t, T, options.nodes);
  if (options.check_doubling) {
    const GapProbability h = gap_once(K, t, T, 2 * options.nodes);
    g.doubling_change = std::abs(h.probability - g.probability);
    g.tail_doubling_change = g.one_minus > 0.0 ? std::abs(h.one_minus - g.one_minus) / g.one_minus : 0.0;
    if (g.doubling_change > options.tolerance) {
      throw NumericalError(ErrorCode::QuadratureUnstable,
                           "gap probability changes by " + std::to_string(g.doubling_change) +
                               " when nodes double");
    }
  }
  return g;
}

double edge_rescaled(const CDKernel& K, const EquilibriumSolution& sol, double s, double t) {
  const double scale = std::pow(static_cast<double>(K.N()), 2.0 / 3.0) * sol.gamma();
  return K(sol.b() + s / scale, sol.b() + t / scale) / scale;
}

double diag_tail_integral(const CDKernel& K, double t, double L) {
  if (t >= L) return 0.0;
  AdaptiveOptions opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 1e-300;
  return adaptive_gauss_legendre([&](double y) { return K.diagonal(y); }, t, L, opt);
}

}  // namespace edgestat
