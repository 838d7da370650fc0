#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace remlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSqrt2 = 1.414213562373095048801688724209698079;
inline constexpr double kInvSqrt2 = 0.707106781186547524400844362104849039;
inline constexpr double kSqrt2Pi = 2.506628274631000502415765284811045253;

/// Inverse-temperature point beta = sigma + i*tau.
struct ComplexParam {
  double sigma = 0.0;
  double tau = 0.0;

  ComplexParam() = default;
  ComplexParam(double s, double t) : sigma(s), tau(t) {}
  explicit ComplexParam(cplx b) : sigma(b.real()), tau(b.imag()) {}

  cplx value() const { return {sigma, tau}; }
  bool finite() const { return std::isfinite(sigma) && std::isfinite(tau); }
};

enum class PhaseRegion { B1, B2, B3, Boundary12, Boundary13, Boundary23, TriplePoint };

const char* to_string(PhaseRegion r);

/// Model size, energy/phase correlation and seed for one realization family.
///
/// When built from n, N = round(e^n) and n is then recomputed as log N so the
/// identity n == log N holds exactly for everything downstream.
struct RemConfig {
  double n = 0.0;        // log-system-size
  std::int64_t N = 1;    // number of summands
  double rho = 1.0;      // corr(X_k, Y_k), in [-1, 1]
  std::uint64_t seed = 0;
  bool allow_large_n = false;  // override for the n > 24 precision refusal

  static RemConfig from_n(double n, double rho = 1.0, std::uint64_t seed = 0);
  static RemConfig from_N(std::int64_t N, double rho = 1.0, std::uint64_t seed = 0);
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// log(1+w) for complex w without cancellation for small |w|.
inline cplx log1p_c(cplx w) {
  const double x = w.real(), y = w.imag();
  return {0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x)};
}

// exp(w) - 1 for complex w without cancellation for small |w|.
inline cplx expm1_c(cplx w) {
  const double x = w.real(), y = w.imag();
  const double em = std::expm1(x);
  const double s = std::sin(0.5 * y);
  return {em * std::cos(y) - 2.0 * s * s, (em + 1.0) * std::sin(y)};
}

}  // namespace remlab
