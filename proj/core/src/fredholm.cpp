#include "edgestat/fredholm.hpp"

#include <cmath>
#include <limits>

namespace edgestat {

FredholmDeterminant fredholm_determinant(const Eigen::MatrixXd& A) {
  FredholmDeterminant out;
  if (A.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  out.min_eigenvalue = lambda.minCoeff();
  out.max_eigenvalue = lambda.maxCoeff();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] >= 1.0) {
      log_det = -std::numeric_limits<double>::infinity();
      break;
    }
    log_det += std::log1p(-lambda[i]);
  }
  out.log_det = log_det;
  out.det = std::exp(log_det);
  out.one_minus_det = -std::expm1(log_det);
  return out;
}

}  // namespace edgestat
