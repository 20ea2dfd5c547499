#ifndef EDGESTAT_TESTS_CHECK_HPP
#define EDGESTAT_TESTS_CHECK_HPP

#include <algorithm>
#include <cmath>

namespace edgestat::testing {

inline bool near_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool near_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace edgestat::testing

#endif
