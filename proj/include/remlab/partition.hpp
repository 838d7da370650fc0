#pragma once

#include <string>
#include <vector>

#include "remlab/phase.hpp"
#include "remlab/sampling.hpp"
#include "remlab/types.hpp"

namespace remlab {

// Z_N(beta) = sum_k exp(sqrt(n) (sigma X_k + i tau Y_k)) evaluated in
// factored form: the largest term modulus is pulled out and the remainder
// accumulated with compensated chunked summation in a fixed order, so results
// are reproducible for any thread count and permutation-stable to 1e-9.

struct PartitionValue {
  double log_modulus = 0.0;  // log |Z_N|; -inf sentinel on total cancellation
  double phase = 0.0;        // arg Z_N in (-pi, pi]
  double cancellation_index = 0.0;  // log(largest term) - log_modulus

  bool is_zero() const { return std::isinf(log_modulus) && log_modulus < 0; }
  cplx log_value() const { return {log_modulus, phase}; }
};

// Extreme-value centering b_N = sqrt(2n) - log(4 pi n) / (2 sqrt(2n)).
double compute_bn(double n);

PartitionValue eval_point(const SampleBatch& batch, double n, ComplexParam beta);

// log-partition function p_N = log|Z_N| / n (-inf propagates).
double log_partition(const SampleBatch& batch, double n, ComplexParam beta);

struct GridEval {
  std::vector<double> sigma_axis;
  std::vector<double> tau_axis;
  std::vector<PartitionValue> values;  // row-major over (sigma, tau)
  RemConfig config;

  const PartitionValue& at(std::size_t i, std::size_t j) const {
    return values[i * tau_axis.size() + j];
  }
};

struct GridOptions {
  int threads = 1;
  std::size_t memory_budget_bytes = std::size_t(2) << 30;
};

// Amortized grid evaluation: one real exponential per (sigma, k) and one
// unit-modulus rotation per (tau, k).  Matches eval_point to 1e-12 on every
// node and must beat pointwise evaluation by >= 3x for >= 32 tau values.
GridEval eval_grid(const SampleBatch& batch, double n, std::vector<double> sigma_axis,
                   std::vector<double> tau_axis, const GridOptions& opts = {});

// Local frames for the rescaled processes near a point beta0.
enum class LocalFrame { SqrtN_B3, Boundary13, Boundary12 };

// Normalized process value at frame coordinate t:
//   SqrtN_B3  : (Z_N(b0 + t/sqrt n) - N^{1 + (b0 + t/sqrt n)^2/2})
//               / N^{1/2 + (sigma0 + t/sqrt n)^2}
//   Boundary13: Z_N(b0 (1 + (t + i delta_N)/n)) / N^{1/2 + (sigma0 + b0(t+i delta_N)/n)^2}
//   Boundary12: Z_N(b) e^{-b sqrt(n) b_N},  b = b0 + (t + d'_N) / ((b0 - sqrt2) n)
cplx local_frame_eval(const SampleBatch& batch, double n, ComplexParam beta0, LocalFrame frame,
                      cplx t);

// Recentering sequences of the boundary lattices.
double delta_n(ComplexParam beta0, double n);            // n sigma0 tau0 mod 2pi, in [0, 2pi)
cplx d_n_prime(ComplexParam beta0, double n);            // O(log n) representative
cplx d_n(ComplexParam beta0, double n);                  // d'_N / (sqrt2 tau0)

// ---------------------------------------------------------------------------
// Local Taylor model of Z_N around a center, for certified zero work.  Only
// meaningful when Z_N is analytic in beta, i.e. rho = 1 (Y == X pathwise).
// The model evaluates Z_N(beta) * exp(-scale_log): zeros are unchanged and
// values stay O(1) on the disk.
struct ExpSumModel {
  cplx center;
  double radius = 0.0;
  std::vector<cplx> coeff;  // scaled Taylor coefficients
  double scale_log = 0.0;
  double tail_bound = 0.0;  // absolute bound on the truncation error (scaled)

  cplx eval(cplx beta) const;
  cplx deriv(cplx beta) const;
};

ExpSumModel make_local_model(const SampleBatch& batch, double n, cplx center, double radius);

// CSV/JSON serialization of grids (columns fixed by the file contract).
void write_grid_csv(const GridEval& grid, const std::string& path);

}  // namespace remlab
