#ifndef EDGESTAT_CDKERNEL_HPP
#define EDGESTAT_CDKERNEL_HPP

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "edgestat/equilibrium.hpp"

namespace edgestat {

/// Weight w(x) = exp(-N V(x) + f(x)) on [-L, L].
struct WeightSpec {
  int N = 0;
  double L = 0.0;
  std::function<double(double)> V;
  std::function<double(double)> f;  // empty means f = 0

  [[nodiscard]] double log_weight(double x) const { return -N * V(x) + (f ? f(x) : 0.0); }
};

/// Weight of the effective field of an equilibrium solution.
WeightSpec make_weight(std::shared_ptr<const EquilibriumSolution> sol, int N, double L,
                       std::function<double(double)> f = {});

/// Jacobi coefficients of the orthonormal polynomials of a weight.
struct RecurrenceTable {
  std::vector<double> alpha;  // alpha_0 .. alpha_{n-1}
  std::vector<double> beta;   // beta_1 .. beta_{n-1} at indices 1..n-1; beta[0] is unused (1)
  double log_mass = 0.0;      // log of the zeroth moment int w
  int grid_size = 0;
  double refinement_change = 0.0;      // max relative change of beta_k when the grid doubles
  double log_partition_change = 0.0;   // change of log Z_N under the same doubling

  [[nodiscard]] int size() const noexcept { return static_cast<int>(alpha.size()); }
};

struct RecurrenceOptions {
  int grid_size = 0;  // 0: max(8n + 200, 1000)
  bool check_refinement = true;
};

/// Discretised Stieltjes procedure in Lanczos form on a Gauss-Legendre grid.
/// Throws GridTooCoarse, Underflow.
RecurrenceTable recurrence(const WeightSpec& w, int n, const RecurrenceOptions& options = {});

/// log Z_N = log N! + N log mu_0 + sum_{k=1}^{N-1} (N - k) log beta_k.
double log_partition(const RecurrenceTable& table, int N);

class CDKernel {
 public:
  explicit CDKernel(WeightSpec w, const RecurrenceOptions& options = {});
  CDKernel(WeightSpec w, RecurrenceTable table);

  [[nodiscard]] int N() const noexcept { return w_.N; }
  [[nodiscard]] double L() const noexcept { return w_.L; }
  [[nodiscard]] const WeightSpec& weight() const noexcept { return w_; }
  [[nodiscard]] const RecurrenceTable& table() const noexcept { return table_; }

  [[nodiscard]] double operator()(double s, double t) const;
  [[nodiscard]] double diagonal(double t) const;

  /// q_j(t) = p_j(t) w(t)^{1/2}, j < N, propagated with a running scale.
  [[nodiscard]] std::vector<double> weighted_polynomials(double t) const;

 private:
  struct Scaled {
    std::vector<double> r;
    double log_scale = 0.0;  // q_j = r_j * exp(log_scale)
  };
  [[nodiscard]] Scaled scaled_polynomials(double t) const;

  WeightSpec w_;
  RecurrenceTable table_;
  std::vector<double> sqrt_beta_;
};

inline double kernel_eval(const CDKernel& K, double s, double t) { return K(s, t); }

/// rho^k(t_1..t_k) = (N-k)!/N! det[K(t_i, t_j)], k <= 6.
double correlation(const CDKernel& K, std::span<const double> points);

/// lambda_N(w, t) = w(t) / K_N(t, t).
double christoffel(const CDKernel& K, double t);

struct LogRatio {
  double value = 0.0;
  double tolerance = 0.0;  // grid-refinement estimate
};

/// log(Z_{w1} / Z_{w2}) from the recurrence tables; same N and L.
LogRatio log_partition_ratio(const RecurrenceTable& t1, const RecurrenceTable& t2, int N);
LogRatio log_partition_ratio(const WeightSpec& w1, const WeightSpec& w2);

struct GapOptions {
  int nodes = 60;
  bool check_doubling = true;
  double tolerance = 1e-6;
};

struct GapProbability {
  double probability = 1.0;  // det(I - K) on (t, L)
  double one_minus = 0.0;    // 1 - det, accurate for small tails
  double log_probability = 0.0;
  double truncation = 0.0;   // right end actually discretised
  double doubling_change = 0.0;       // |P(m) - P(2m)|
  double tail_doubling_change = 0.0;  // same change relative to 1 - P
};

/// P(x_max <= t) by Nystrom discretisation of det(I - K_N) on (t, L) with
/// geometrically graded Gauss-Legendre panels. Throws QuadratureUnstable.
GapProbability gap_probability(const CDKernel& K, double t, double L, const GapOptions& options = {});

/// (N^{2/3} gamma)^{-1} K_N(b + s / (N^{2/3} gamma), b + t / (N^{2/3} gamma)).
double edge_rescaled(const CDKernel& K, const EquilibriumSolution& sol, double s, double t);

/// int_t^L K_N(y, y) dy.
double diag_tail_integral(const CDKernel& K, double t, double L);

}  // namespace edgestat

#endif  // EDGESTAT_CDKERNEL_HPP
