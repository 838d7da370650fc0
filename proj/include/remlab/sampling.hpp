#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "remlab/rng.hpp"
#include "remlab/types.hpp"

namespace remlab {

// One realization of the i.i.d. pairs (X_k, Y_k) behind Z_N: X standard
// normal, Y = rho X + sqrt(1-rho^2) W.  Bit-reproducible given (seed, stream).
struct SampleBatch {
  Eigen::ArrayXd x;
  Eigen::ArrayXd y;
  double rho = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  bool allow_large_n = false;  // copied from RemConfig; partition checks it

  Eigen::Index size() const { return x.size(); }
};

struct RemConfig;  // from types.hpp via phase.cpp; declared in types.hpp

SampleBatch gaussian_pairs(const RemConfig& cfg, std::uint64_t stream);

// Arrival times of a unit-intensity Poisson process, truncated at horizon T.
struct PoissonArrivals {
  std::vector<double> p;  // strictly increasing, all <= horizon
  double horizon = 0.0;
};
PoissonArrivals poisson_arrivals(double horizon, std::uint64_t seed, std::uint64_t stream);

// Totally skewed positive (alpha/2)-stable variate with Laplace transform
// exp(-s^{alpha_half}); angle-exponential transform (one uniform angle, one
// exponential).
double positive_stable(double alpha_half, RngStream& rng);

// Complex isotropic alpha-stable via the sub-Gaussian representation
// sqrt(A) (G1 + i G2); characteristic function exp(-c |z|^alpha) with the
// sampler's natural scale c = 2^{-alpha/2}.
cplx isotropic_stable_complex(double alpha, RngStream& rng);

// Top-K rescaled order statistics sqrt(n) (X_(N-k) - b_N), largest first.
std::vector<double> extremal_rescaled_points(const SampleBatch& batch, double n, int top_k);

}  // namespace remlab
