#ifndef EDGESTAT_FIELDS_HPP
#define EDGESTAT_FIELDS_HPP

#include <vector>

namespace edgestat {

/// Even polynomial Q(x) = sum_k q_k x^k with positive leading coefficient.
class ConfiningField {
 public:
  static constexpr int kMaxDegree = 12;

  /// `coefficients[k]` multiplies x^k. Trailing zeros are dropped.
  /// Throws ValidationError if Q is not even, has degree > 12 or a
  /// non-positive leading coefficient.
  explicit ConfiningField(std::vector<double> coefficients);

  [[nodiscard]] double value(double x) const noexcept;
  [[nodiscard]] double d1(double x) const noexcept;
  [[nodiscard]] double d2(double x) const noexcept;
  [[nodiscard]] double d3(double x) const noexcept;

  [[nodiscard]] int degree() const noexcept { return static_cast<int>(q_.size()) - 1; }
  [[nodiscard]] const std::vector<double>& coefficients() const noexcept { return q_; }

  /// Q(x) = x^2.
  static ConfiningField gaussian() { return ConfiningField({0.0, 0.0, 1.0}); }

 private:
  std::vector<double> q_;
  std::vector<double> dq_;
  std::vector<double> d2q_;
  std::vector<double> d3q_;
};

struct ConvexityReport {
  double alpha = 0.0;      // min of Q'' over the interval
  double argmin = 0.0;
  double lower = 0.0;      // interval searched
  double upper = 0.0;
  double root_bound = 0.0; // Cauchy bound on the real roots of Q'''
  bool global = false;     // interval contains every critical point of Q''
};

/// Minimum of Q'' over [-L-1, L+1] located through the real roots of Q'''.
/// Does not throw on non-convexity; see alpha_Q.
ConvexityReport convexity_report(const ConfiningField& q, double L);

/// As convexity_report(...).alpha, throwing NumericalError(NonConvex) when
/// the minimum is not strictly positive.
double alpha_Q(const ConfiningField& q, double L);

struct GaussianTerm {
  double c = 0.0;      // amplitude
  double sigma = 1.0;  // width
};

/// h(t) = sum_j c_j exp(-t^2 / (2 sigma_j^2)).
class InteractionSpec {
 public:
  InteractionSpec() = default;
  explicit InteractionSpec(std::vector<GaussianTerm> terms);

  [[nodiscard]] double h(double t) const noexcept;
  [[nodiscard]] double d1(double t) const noexcept;
  [[nodiscard]] double d2(double t) const noexcept;

  /// (2 pi)^{-1/2} int e^{-its} h(s) ds = sum_j c_j sigma_j exp(-sigma_j^2 t^2 / 2).
  [[nodiscard]] double fourier(double t) const noexcept;

  [[nodiscard]] bool positive_definite() const noexcept;
  [[nodiscard]] bool negative_definite() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept;

  /// sup_t -h''(t).
  [[nodiscard]] double sup_neg_h2() const;

  /// Smallest S >= 0 with |hhat(t)| <= threshold for all t >= S.
  [[nodiscard]] double fourier_cutoff(double threshold) const noexcept;

  [[nodiscard]] InteractionSpec scaled(double factor) const;
  [[nodiscard]] const std::vector<GaussianTerm>& terms() const noexcept { return terms_; }

 private:
  std::vector<GaussianTerm> terms_;
};

inline double fourier_h(const InteractionSpec& h, double t) { return h.fourier(t); }

struct SplitInteraction {
  InteractionSpec plus;   // nonnegative amplitudes
  InteractionSpec minus;  // nonnegative amplitudes, h = plus - minus
};

SplitInteraction split(const InteractionSpec& h);

}  // namespace edgestat

#endif  // EDGESTAT_FIELDS_HPP
