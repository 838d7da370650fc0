#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "remlab/types.hpp"

namespace remlab {

// Gauss-Legendre nodes/weights on [-1, 1], cached per order.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_legendre(int order);

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  bool converged = true;
};

// Adaptive Gauss quadrature on [a, b]: nested low/high order estimates per
// interval, bisect until the local discrepancy fits the error budget.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_intervals = 200000);

// Complex-valued variant (same scheme on both components).
struct QuadResultC {
  cplx value{0.0, 0.0};
  double abs_err = 0.0;
  bool converged = true;
};
QuadResultC integrate_adaptive_c(const std::function<cplx(double)>& f, double a, double b,
                                 double abs_tol, int max_intervals = 200000);

}  // namespace remlab
