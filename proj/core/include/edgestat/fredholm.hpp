#ifndef EDGESTAT_FREDHOLM_HPP
#define EDGESTAT_FREDHOLM_HPP

#include <Eigen/Dense>

namespace edgestat {

/// det(I - A) for a symmetric Nystrom matrix A = [sqrt(w_i) K(y_i, y_j) sqrt(w_j)].
struct FredholmDeterminant {
  double log_det = 0.0;        // sum_i log1p(-lambda_i)
  double det = 1.0;
  double one_minus_det = 0.0;  // -expm1(log_det), accurate when the determinant is close to 1
  double max_eigenvalue = 0.0;
  double min_eigenvalue = 0.0;
};

/// Eigenvalues of A give det(I - A) = prod (1 - lambda_i) with full relative
/// accuracy in 1 - det even when the operator norm is tiny.
FredholmDeterminant fredholm_determinant(const Eigen::MatrixXd& A);

}  // namespace edgestat

#endif  // EDGESTAT_FREDHOLM_HPP
