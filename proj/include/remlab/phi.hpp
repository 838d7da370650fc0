#pragma once

#include <functional>

#include "remlab/types.hpp"

namespace remlab {

// Complex-analytic continuation of the standard normal distribution function
//   Phi(z) = (2*pi)^{-1/2} * integral_{-inf}^{z} exp(-x^2/2) dx
// together with a log-space value that stays finite when the value itself
// over/underflows, and truncated exponential moments built on it.

enum class PhiBranch { series, continued_fraction, asymptotic_lower, asymptotic_upper };

struct PhiResult {
  cplx value{0.0, 0.0};
  cplx log_value{0.0, 0.0};  // principal-branch log of value
  PhiBranch branch_used = PhiBranch::series;
};

// Relative accuracy 1e-12 for |z| <= 26; beyond that the appropriate
// asymptotic sector expansion is used and log_value remains finite.
PhiResult phi_complex(cplx z);

// Scaled complementary error function w(zeta) = exp(-zeta^2) erfc(-i zeta),
// computed for Im(zeta) >= 0.  Exposed for tests.
cplx faddeeva_upper(cplx zeta);

// Explicit truncation point: either a finite threshold or +infinity.  The
// sentinel is a distinguished value, not a float infinity hack.
struct Cutoff {
  bool is_finite = true;
  double a = 0.0;
  static Cutoff finite(double a) { return {true, a}; }
  static Cutoff plus_infinity() { return {false, 0.0}; }
};

// E[ exp(w X) 1_{X < a} ] = exp(w^2/2) * Phi(a - w) for X standard normal.
// `log_value` is the log-space twin used when exp(w^2/2) would overflow.
struct MomentResult {
  cplx value{0.0, 0.0};
  cplx log_value{0.0, 0.0};
};
MomentResult truncated_exp_moment(cplx w, Cutoff a);

// E[ exp(s(sigma X + i tau Y)) 1_{X < a} ] for a bivariate standard normal
// pair with correlation rho:
//   exp(-s^2 tau^2 (1-rho^2)/2) * truncated_exp_moment(s(sigma + i tau rho), a).
MomentResult truncated_exp_moment_bivariate(double s, double sigma, double tau, double rho,
                                            Cutoff a);

enum class SaddleRegime { BoundaryDominated, SaddleDominated, TwoTerm, CriticalReal };

struct SaddleResult {
  cplx value{0.0, 0.0};
  cplx log_value{0.0, 0.0};
  SaddleRegime regime = SaddleRegime::SaddleDominated;
};

// Asymptotics of F(n) = E[exp(w sqrt(n) X) 1_{X < sqrt(n) a(n)}] as n grows:
//   boundary term   (2 pi n)^{-1/2} (w-a)^{-1} exp(n(a(n) w - a(n)^2/2)),  u+|v| > a
//   saddle term     exp(w^2 n / 2),                                       u+|v| < a
//   two-term sum    both, in the band u-|v| < a < u+|v|
//   critical real   Phi(c) exp(w^2 n / 2) when v = 0, a(n) = w + c/sqrt(n) + o(1/sqrt(n)).
// Throws on exact regime ties (u+|v| == a with no critical-real data).
SaddleResult saddle_asymptotic(cplx w, const std::function<double(double)>& a_seq, double n);

// Dominating bounds of the truncated moments for real w != a:
//   E[e^{wX} 1_{X<a}] < e^{aw - a^2/2}  (w > a)
//   E[e^{wX} 1_{X>a}] < e^{aw - a^2/2}  (w < a)
// Returns the bound value (same expression in both cases).
double saddle_bounds_check(double w, double a);

}  // namespace remlab
