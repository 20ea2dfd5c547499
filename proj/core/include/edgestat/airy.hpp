#ifndef EDGESTAT_AIRY_HPP
#define EDGESTAT_AIRY_HPP

namespace edgestat {

struct AiryValue {
  double t = 0.0;
  double ai = 0.0;
  double aip = 0.0;  // Ai'(t)
};

/// Ai and Ai' on [-12, 40]. Maclaurin series in double-double arithmetic for
/// |t| <= 9, asymptotic expansions beyond. Throws OutOfRange.
AiryValue airy(double t);

/// K_Ai(s, t) = (Ai(t) Ai'(s) - Ai'(t) Ai(s)) / (t - s), with the diagonal
/// limit Ai'(t)^2 - t Ai(t)^2 plus first and second order corrections for |s - t| <= 1e-4.
double airy_kernel(double s, double t);
double airy_kernel(const AiryValue& s, const AiryValue& t);

enum class TracyWidomMapping {
  Quadratic,  // y = s + (X - s) u^2: nodes cluster at the left end
  Linear,     // plain Gauss-Legendre on (s, X)
};

struct TracyWidomOptions {
  int nodes = 60;
  TracyWidomMapping mapping = TracyWidomMapping::Quadratic;
  bool check_doubling = true;
};

struct TracyWidomValue {
  double s = 0.0;
  double F2 = 0.0;
  double one_minus_F2 = 0.0;
  double log_F2 = 0.0;
  double truncation = 0.0;  // right end X of the Nystrom interval
  double doubling_change = 0.0;  // |F2(m) - F2(2m)|; 0 if not checked
};

/// F_2(s) = det(I - K_Ai) on L^2(s, infinity), s in [-8, 12]. Throws
/// QuadratureUnstable when doubling the node count moves F_2 by more than 1e-8.
TracyWidomValue tracy_widom(double s, const TracyWidomOptions& options = {});

inline double tracy_widom_cdf(double s) { return tracy_widom(s).F2; }

/// e^{-(4/3) s^{3/2}} / (16 pi s^{3/2}) and its logarithm.
double tw_tail_asymptotic(double s);
double log_tw_tail_asymptotic(double s);

}  // namespace edgestat

#endif  // EDGESTAT_AIRY_HPP
