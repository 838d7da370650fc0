#pragma once

#include <functional>

#include "remlab/phase.hpp"
#include "remlab/types.hpp"

namespace remlab {

// The limiting zero measure Xi = 2*Xi3 + Xi12 + Xi13:
//   Xi3  : Lebesgue measure on B3 (weight 2 in Xi),
//   Xi13 : length measure on the two unit-circle arcs |sigma| < 1/sqrt(2),
//   Xi12 : density sqrt(2)|tau| wrt length on the four segments
//          |sigma|+|tau| = sqrt(2), |sigma| > 1/sqrt(2).
//
// Xi3 has infinite total mass (B3 is unbounded in tau), so integration
// requires the caller to declare a compact support.

struct XiMeasure {
  // Exact component masses inside the closed disk |beta| <= R meeting each
  // component's support (diagnostic; arcs/segments are bounded).
  static double segment_mass_per_segment();  // = 1/2
  static double arc_total_mass();            // = pi
};

struct XiQuadSpec {
  double line_tol = 1e-9;    // absolute tolerance for line/arc components
  int area_cells = 128;      // base tensor-midpoint resolution per axis
  int area_refinements = 2;  // number of mesh halvings for Richardson
};

struct XiIntegral {
  double value = 0.0;
  double abs_err = 0.0;
  double area_part = 0.0;
  double arc_part = 0.0;
  double segment_part = 0.0;
  bool converged = true;
};

// Integrate a compactly supported continuous f against Xi.  The support is
// declared as the closed disk |z - center| <= radius.
XiIntegral xi_integrate(const std::function<double(cplx)>& f, cplx support_center,
                        double support_radius, const XiQuadSpec& quad = {});

// C^2 test field with known Laplacian and declared compact support.
struct TestField {
  std::function<double(cplx)> f;
  std::function<double(cplx)> laplacian;
  cplx center;
  double radius = 1.0;
};

// Radial polynomial bump (1 - |z-c|^2/r^2)^3 on its disk; C^2 across the rim.
TestField make_poly_bump(cplx center, double radius);

struct GridSpec {
  double sigma_lo = 0, sigma_hi = 0, tau_lo = 0, tau_hi = 0;
  double step = 0.0;
};

// Distributional-Laplacian pairing check:
//   lhs = sum over grid of p(beta) * (Delta f)(beta) * cell_area
//   rhs = xi_integrate(f)
// The grid must cover supp f; a mesh coarser than diameter/16 is refused.
std::pair<double, double> laplacian_consistency(const GridSpec& grid, const TestField& field,
                                                const XiQuadSpec& quad = {});

}  // namespace remlab
