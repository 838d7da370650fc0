#pragma once

#include <cstdint>
#include <vector>

#include "remlab/rng.hpp"
#include "remlab/sampling.hpp"
#include "remlab/types.hpp"

namespace remlab {

// Plane Gaussian analytic function G(t) = sum_k xi_k t^k / sqrt(k!), xi_k
// i.i.d. standard complex Gaussian.  Truncation is chosen from the evaluation
// disk radius so the tail standard deviation is < 1e-8 relative to the
// variance profile e^{|t|^2/2} on the disk.
struct GafSample {
  std::vector<cplx> coeffs;
  double disk_radius = 0.0;
  int truncation_K = 0;
};

GafSample gaf_sample(double disk_radius, std::uint64_t seed, std::uint64_t stream);

cplx gaf_eval(const GafSample& sample, cplx t);
cplx gaf_deriv(const GafSample& sample, cplx t);

struct GafZeroStats {
  double mean_count = 0.0;
  std::vector<int> counts;
};

// Zeros of GAF replicas in the disk |t| < radius; counts via the zeros engine.
GafZeroStats gaf_zero_stats(double radius, int replicas, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Poisson zeta function.  A sample stores the raw arrivals so the same
// realization can be evaluated coherently at many beta.
struct ZetaPSample {
  PoissonArrivals arrivals;
  // log of each arrival, cached for evaluation
  std::vector<double> log_p;
};

ZetaPSample zetap_sample(double horizon, std::uint64_t seed, std::uint64_t stream);

// zeta~_P(beta; T) = sum_{P_k <= T} P_k^{-beta} - int_1^T t^{-beta} dt, with
// the compensator in closed form ((T^{1-beta}-1)/(1-beta), or log T at
// beta = 1).  Valid for Re beta > 1/2 (slow convergence warning region below
// 0.55 is the caller's concern).
cplx zetap_tilde_eval(const ZetaPSample& sample, cplx beta);
cplx zetap_tilde_deriv(const ZetaPSample& sample, cplx beta);

// zeta_P(beta) = zeta~_P(beta) + 1/(beta - 1); refuses |beta - 1| < 1e-6.
cplx zetap_eval(const ZetaPSample& sample, cplx beta);
cplx zetap_deriv(const ZetaPSample& sample, cplx beta);

// Tail standard deviation sqrt(T^{1-2 sigma} / (2 sigma - 1)) of the horizon
// truncation.
double zetap_tail_sd(cplx beta, double horizon);

// Smallest horizon T >= 1 with tail standard deviation below tol.
double zetap_choose_horizon(cplx beta, double tol);

// Local Taylor model of zeta~_P(beta) + pole around `center` (radius of
// validity `radius`), for fast zero work on one realization.
struct ZetaLocalModel {
  cplx center;
  double radius = 0.0;
  std::vector<cplx> coeff;
  bool has_pole = false;  // the 1/(beta-1) pole is added exactly, not expanded

  cplx eval(cplx beta) const;
  cplx deriv(cplx beta) const;
};
ZetaLocalModel zetap_local_model(const ZetaPSample& sample, cplx center, double radius,
                                 bool include_pole);

}  // namespace remlab
