#pragma once

#include "remlab/types.hpp"

namespace remlab {

// Phase diagram of the limiting log-partition function in the beta plane.
//
//   B2 = { 2*sigma^2 > 1, |sigma|+|tau| > sqrt(2) }
//   B3 = { 2*sigma^2 < 1, sigma^2+tau^2 > 1 }
//   B1 = complement of the closure of (B2 u B3)
//
// Classification is exact arithmetic on the defining inequalities; there is
// no epsilon band.  Callers needing "near boundary" semantics pass their own
// margin.
PhaseRegion classify(ComplexParam beta);

// Limiting log-partition function p(beta):
//   1 + (sigma^2 - tau^2)/2   on closure(B1)
//   sqrt(2)|sigma|            on closure(B2)
//   1/2 + sigma^2             on closure(B3)
// On boundaries all applicable formulas are evaluated and checked to agree
// within 1e-12 (p is continuous).
double limit_p(ComplexParam beta);

// Signed distance proxies used by tests and window validation: smallest
// absolute defect among the three defining equalities.
double boundary_margin(ComplexParam beta);

}  // namespace remlab
