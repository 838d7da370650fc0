#pragma once

#include <functional>
#include <vector>

#include "remlab/partition.hpp"
#include "remlab/types.hpp"

namespace remlab {

// Certified localization of zeros of an analytic-function handle by
// argument-principle counting on rectangles, adaptive subdivision and Newton
// refinement.

struct Rect {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;

  cplx center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double diameter() const { return std::hypot(width(), height()); }
  bool contains(cplx z) const {
    return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
  }
  static Rect around(cplx c, double half_w, double half_h) {
    return {c.real() - half_w, c.real() + half_w, c.imag() - half_h, c.imag() + half_h};
  }
};

struct AnalyticHandle {
  std::function<cplx(cplx)> eval;
  std::function<cplx(cplx)> deriv;  // empty: Richardson central differences
  Rect domain;
  double abs_tolerance = 0.0;  // evaluation uncertainty (e.g. model tail bound)
};

struct BoundaryZeroSuspicion : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Total phase change along the rectangle boundary divided by 2 pi, with
// adaptive edge sampling (every increment < pi/2).  Throws
// BoundaryZeroSuspicion when the boundary modulus floor is hit; the caller
// jitters the rectangle.
int count_zeros_winding(const AnalyticHandle& h, const Rect& rect);

struct Zero {
  cplx z;
  int multiplicity = 1;
  double residual = 0.0;  // |h(z)| relative to the max boundary modulus of its cell
};

struct CertifiedCell {
  Rect cell;
  int winding = 0;
  bool resolved = true;  // false: max depth hit with winding > target
};

struct ZeroSet {
  std::vector<Zero> zeros;
  std::vector<CertifiedCell> cells;
  cplx frame_origin{0.0, 0.0};  // set by local_zero_process
  double frame_scale = 1.0;

  int total_multiplicity() const;
  int total_winding() const;
};

// Subdivide until each cell holds <= target zeros, then Newton-refine (with
// the handle's derivative or Richardson differences).  Boundary-suspect cell
// edges are jittered deterministically by 1e-7*(1+i).
ZeroSet locate_zeros(const AnalyticHandle& h, Rect rect, int target_cell_zeros = 1);

// (1/n) sum f(zeros), the empirical zero measure at weight 1/n.
double empirical_zero_measure(const ZeroSet& zs, const std::function<double(cplx)>& f, double n);

// Consecutive gaps of the zeros projected on a unit direction.
std::vector<double> spacing_stats(const ZeroSet& zs, cplx direction);

// Zeros of Z_N within a beta-disk of radius R/sqrt(n) around beta0 (strictly
// inside B3), returned in the rescaled frame t = sqrt(n) (beta - beta0).
ZeroSet local_zero_process(const SampleBatch& batch, double n, ComplexParam beta0,
                           double window_radius);

// Zeros of Z_N around a boundary point (generic window in the beta plane),
// via tiled local Taylor models.  rho must be 1.
ZeroSet zeros_in_window(const SampleBatch& batch, double n, Rect window);

struct ZetaCompareSummary {
  std::vector<int> rem_counts;     // Z_N zero counts per replica
  std::vector<int> zeta_counts;    // zeta_P(beta/sqrt2) zero counts per replica
  std::vector<double> rem_gaps;    // pooled nearest-neighbour distances
  std::vector<double> zeta_gaps;
  double ks_counts_p = 1.0;
  double ks_gaps_p = 1.0;
};

// Compare Z_N zeros in a region compactly inside {sigma > 1/sqrt2,
// sigma+|tau| > sqrt2} against zeros of zeta_P(beta/sqrt2) over independent
// samples.  rho must be 1; regions meeting the excluded triangle
// {sigma > 1/sqrt2, |sigma|+|tau| < sqrt2} are refused.
ZetaCompareSummary zetap_zero_compare(const RemConfig& cfg, Rect region, int replicas);

void write_zeroset_csv(const ZeroSet& zs, const std::string& path);

}  // namespace remlab
