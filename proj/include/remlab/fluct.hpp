#pragma once

#include <optional>
#include <string>
#include <vector>

#include "remlab/partition.hpp"
#include "remlab/stats.hpp"
#include "remlab/types.hpp"

namespace remlab {

// Phase-dependent normalization (m_N, v_N, limit law) for the fluctuations of
// Z_N at complex beta and correlation rho, with both centering conventions
// for the heavy-tailed cases: the power-of-N asymptotic center and the exact
// truncated expectation N E[e^{sqrt n (sigma X + i tau Y)} 1_{X < b_N}].

enum class CaseTag { C1a, C1b, C1crit, C2a, C2b, C2c };
enum class LimitKind { ComplexGaussian, RealGaussianOutOfScope, IsotropicStable, ZetaP };
enum class Centering { Power, TruncatedExact };

struct LimitLaw {
  LimitKind kind = LimitKind::ComplexGaussian;
  double variance = 1.0;     // ComplexGaussian: E|Z|^2
  double alpha = 0.0;        // IsotropicStable exponent
  cplx zeta_argument{0, 0};  // ZetaP: beta/sqrt2 (conjugated for rho = -1)
  bool zeta_tilde = false;   // tilde form (exact truncated centering)
  bool zeta_conjugate = false;
};

struct NormalizationPlan {
  ComplexParam beta;
  double rho = 1.0;
  double n = 0.0;
  CaseTag case_tag = CaseTag::C1a;
  Centering centering = Centering::Power;
  bool m_is_zero = false;
  cplx log_m{0, 0};  // log of m_N (meaningless when m_is_zero)
  cplx log_v{0, 0};  // log of v_N, complex for the rho = +-1 zeta scaling
  LimitLaw limit;
};

const char* to_string(CaseTag t);

// Centering default: exact truncated expectation for the C2 cases, power
// centering (the exact full expectation) for C1.
NormalizationPlan make_plan(ComplexParam beta, double rho, double n);
NormalizationPlan make_plan(ComplexParam beta, double rho, double n, Centering centering);

// N E[e^{sqrt n (sigma X + i tau Y)} 1_{X < b_N}] in log space.
cplx truncated_center_log(ComplexParam beta, double rho, double n);

struct ReplicaEnsemble {
  std::vector<cplx> samples;  // (Z_N - m_N) / v_N per replica
  RemConfig config;
  NormalizationPlan plan;
};

ReplicaEnsemble run_ensemble(const NormalizationPlan& plan, const RemConfig& cfg, int replicas);

struct GateResult {
  std::string name;
  bool pass = false;
  double statistic = 0.0;
  double p_value = 0.0;
};

struct FluctReport {
  std::vector<GateResult> gates;
  bool all_pass() const;
};

// Complex-Gaussian gates: E|.|^2 ~ v, |E(.^2)| small, per-part KS normality,
// re/im decorrelation.
FluctReport test_gaussian_limit(const ReplicaEnsemble& ens);

// Stable gates: argument-uniformity chi^2, characteristic-function exponent
// regression (alpha +- band), scale-free modulus KS against direct draws.
struct StableReport {
  FluctReport gates;
  double alpha_hat = 0.0;
  double alpha_stderr = 0.0;
};
StableReport test_stable_limit(const ReplicaEnsemble& ens, int sampler_draws = 20000);

// ZetaP gates: two-sample KS on Re/Im/modulus against directly simulated
// zeta~_P / zeta_P samples matching the plan's argument and flags.
FluctReport test_zetap_limit(const ReplicaEnsemble& ens, int zeta_replicas,
                             double horizon_tol = 0.05);

// Directly simulated limit samples for the plan (used by the zeta gates and
// exposed for file export).
std::vector<cplx> simulate_zetap_limit(const NormalizationPlan& plan, int replicas,
                                       std::uint64_t seed, double horizon_tol = 0.05);

}  // namespace remlab
