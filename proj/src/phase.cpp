#include "remlab/phase.hpp"

#include <algorithm>
#include <cstdlib>

namespace remlab {

const char* to_string(PhaseRegion r) {
  switch (r) {
    case PhaseRegion::B1: return "B1";
    case PhaseRegion::B2: return "B2";
    case PhaseRegion::B3: return "B3";
    case PhaseRegion::Boundary12: return "Boundary12";
    case PhaseRegion::Boundary13: return "Boundary13";
    case PhaseRegion::Boundary23: return "Boundary23";
    case PhaseRegion::TriplePoint: return "TriplePoint";
  }
  return "?";
}

RemConfig RemConfig::from_n(double n, double rho, std::uint64_t seed) {
  require(n > 0.0 && std::isfinite(n), "RemConfig: n must be positive and finite");
  require(std::abs(rho) <= 1.0, "RemConfig: |rho| <= 1 required");
  RemConfig c;
  c.N = static_cast<std::int64_t>(std::llround(std::exp(n)));
  if (c.N < 1) c.N = 1;
  c.n = std::log(static_cast<double>(c.N));
  c.rho = rho;
  c.seed = seed;
  return c;
}

RemConfig RemConfig::from_N(std::int64_t N, double rho, std::uint64_t seed) {
  require(N >= 1, "RemConfig: N >= 1 required");
  require(std::abs(rho) <= 1.0, "RemConfig: |rho| <= 1 required");
  RemConfig c;
  c.N = N;
  c.n = std::log(static_cast<double>(N));
  c.rho = rho;
  c.seed = seed;
  return c;
}

PhaseRegion classify(ComplexParam beta) {
  require(beta.finite(), "classify: beta must be finite");
  const double s = beta.sigma, t = beta.tau;
  const double q = 2.0 * s * s - 1.0;             // > 0 right of the two vertical lines
  const double l = std::abs(s) + std::abs(t) - kSqrt2;  // > 0 outside the diamond
  const double c = s * s + t * t - 1.0;           // > 0 outside the unit circle

  if (q > 0.0 && l > 0.0) return PhaseRegion::B2;
  if (q < 0.0 && c > 0.0) return PhaseRegion::B3;

  // Closure membership; B1's closure is
  //   {q<=0, c<=0} u {q>=0, l<=0}.
  const bool m1 = (q <= 0.0 && c <= 0.0) || (q >= 0.0 && l <= 0.0);
  const bool m2 = q >= 0.0 && l >= 0.0;
  const bool m3 = q <= 0.0 && c >= 0.0;

  if (m1 && m2 && m3) return PhaseRegion::TriplePoint;
  if (m1 && m2) return PhaseRegion::Boundary12;
  if (m1 && m3) return PhaseRegion::Boundary13;
  if (m2 && m3) return PhaseRegion::Boundary23;
  return PhaseRegion::B1;  // interior point of B1 (q==0 slivers included)
}

double limit_p(ComplexParam beta) {
  require(beta.finite(), "limit_p: beta must be finite");
  const double s = beta.sigma, t = beta.tau;
  const double q = 2.0 * s * s - 1.0;
  const double l = std::abs(s) + std::abs(t) - kSqrt2;
  const double c = s * s + t * t - 1.0;

  const bool m1 = (q <= 0.0 && c <= 0.0) || (q >= 0.0 && l <= 0.0);
  const bool m2 = q >= 0.0 && l >= 0.0;
  const bool m3 = q <= 0.0 && c >= 0.0;

  double vals[3];
  int nv = 0;
  if (m1) vals[nv++] = 1.0 + 0.5 * (s * s - t * t);
  if (m2) vals[nv++] = kSqrt2 * std::abs(s);
  if (m3) vals[nv++] = 0.5 + s * s;
  if (nv == 0) {
    // Open B2 or B3 interior.
    if (q > 0.0 && l > 0.0) return kSqrt2 * std::abs(s);
    return 0.5 + s * s;
  }
  double lo = vals[0], hi = vals[0];
  for (int i = 1; i < nv; ++i) {
    lo = std::min(lo, vals[i]);
    hi = std::max(hi, vals[i]);
  }
  if (hi - lo > 1e-12)
    throw std::logic_error("limit_p: adjacent-region formulas disagree on a boundary");
  return 0.5 * (lo + hi);
}

double boundary_margin(ComplexParam beta) {
  const double s = beta.sigma, t = beta.tau;
  const double q = std::abs(2.0 * s * s - 1.0);
  const double l = std::abs(std::abs(s) + std::abs(t) - kSqrt2);
  const double c = std::abs(s * s + t * t - 1.0);
  return std::min({q, l, c});
}

}  // namespace remlab
