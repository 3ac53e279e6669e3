#pragma once

#include <functional>
#include <stdexcept>

namespace jps {

// Raised when the adaptive integrator exhausts its subdivision budget
// before reaching the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Globally adaptive Gauss-Kronrod (G7, K15) integration of f over [lo, hi].
// Subdivides the interval with the largest error estimate until the summed
// estimate satisfies max(abs_tol, rel_tol * |integral|).
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           double rel_tol = 1e-10, double abs_tol = 1e-14,
                           int max_intervals = 2000);

}  // namespace jps
