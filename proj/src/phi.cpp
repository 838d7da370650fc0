#include "remlab/phi.hpp"

#include <cmath>

namespace remlab {

namespace {

constexpr double kCombH = 0.45;        // node spacing of the pole expansion
constexpr double kCombReach = 7.5;     // Gaussian support cutoff on the node axis
constexpr double kAsymptoticCut = 26.0;
constexpr double kSeriesCut = 4.0;
constexpr double kCfCut = 8.0;         // switch to the continued fraction in |zeta|

// w(zeta) by the pole expansion of the Gaussian Stieltjes transform over a
// uniform comb, with the residue correction of the strip pole.  Valid for
// Im(zeta) >= 0; uniform absolute accuracy ~ exp(-pi^2/h^2).
cplx faddeeva_comb(cplx zeta) {
  const double xi = zeta.real(), ga = zeta.imag();
  const double h = kCombH;
  // Choose integer vs half-offset nodes so the real part of zeta stays at
  // least h/4 away from every node (keeps the correction denominator tame).
  const double frac = xi / h - std::floor(xi / h);
  const bool half = std::min(frac, 1.0 - frac) < 0.25;
  const double off = half ? 0.5 * h : 0.0;

  const int k0 = static_cast<int>(std::ceil((-kCombReach - off) / h));
  const int k1 = static_cast<int>(std::floor((kCombReach - off) / h));
  cplx acc{0.0, 0.0};
  for (int k = k0; k <= k1; ++k) {
    const double t = k * h + off;
    acc += std::exp(-t * t) / (zeta - t);
  }
  cplx w = cplx(0.0, h / kPi) * acc;
  if (ga < kPi / h) {
    const cplx E = std::exp(cplx(0.0, -kTwoPi / h) * zeta);  // |E| = e^{2 pi ga / h}
    const cplx egz = std::exp(-zeta * zeta);
    w += half ? 2.0 * egz / (1.0 + E) : 2.0 * egz / (1.0 - E);
  }
  return w;
}

// Lentz-free backward evaluation of the J-fraction
//   w(zeta) = (i/sqrt(pi)) / (zeta - (1/2)/(zeta - 1/(zeta - (3/2)/(...))))
// for large |zeta| with Im(zeta) >= 0.
cplx faddeeva_cf(cplx zeta) {
  cplx prev{0.0, 0.0};
  for (int depth = 24; depth <= 768; depth *= 2) {
    cplx d = zeta;
    for (int k = depth; k >= 1; --k) d = zeta - (0.5 * k) / d;
    const cplx w = cplx(0.0, 1.0 / std::sqrt(kPi)) / d;
    if (std::abs(w - prev) <= 1e-16 * std::abs(w)) return w;
    prev = w;
  }
  return prev;
}

// (-1)^k (2k-1)!! / z^{2k} partial sums of the normal tail expansion.
cplx tail_series(cplx z) {
  const cplx iz2 = 1.0 / (z * z);
  cplx term{1.0, 0.0}, sum{1.0, 0.0};
  for (int k = 1; k <= 8; ++k) {
    term *= -static_cast<double>(2 * k - 1) * iz2;
    sum += term;
  }
  return sum;
}

PhiResult phi_left(cplx z);  // requires Re z <= 0

PhiResult phi_reflect(cplx z) {
  // Phi(z) = 1 - Phi(-z); keeps the core evaluation in Re z <= 0 where
  // w(zeta) is zero-free.
  PhiResult inner = phi_left(-z);
  PhiResult out;
  out.value = 1.0 - inner.value;
  if (std::abs(inner.value) < 0.5)
    out.log_value = log1p_c(-inner.value);
  else
    out.log_value = std::log(out.value);
  switch (inner.branch_used) {
    case PhiBranch::asymptotic_lower: out.branch_used = PhiBranch::asymptotic_upper; break;
    default: out.branch_used = inner.branch_used; break;
  }
  return out;
}

PhiResult phi_left(cplx z) {
  PhiResult out;
  const double az = std::abs(z);

  if (az > kAsymptoticCut) {
    // Phi(z) = -(2 pi)^{-1/2} z^{-1} exp(-z^2/2) * S(z) on |arg z| > pi/4,
    // which holds on the whole closed left half-plane.
    const cplx S = tail_series(z);
    out.log_value = -0.5 * z * z + std::log(-S / (kSqrt2Pi * z));
    out.value = std::exp(out.log_value);
    out.branch_used = PhiBranch::asymptotic_lower;
    return out;
  }

  if (az <= kSeriesCut) {
    // Phi(z) = 1/2 + phi(z) * sum z^{2k+1} / (2k+1)!!  (cancellation-free form)
    cplx term = z, sum = z;
    for (int k = 0; k < 200; ++k) {
      term *= z * z / static_cast<double>(2 * k + 3);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    out.value = 0.5 + std::exp(-0.5 * z * z) / kSqrt2Pi * sum;
    out.log_value = std::log(out.value);
    out.branch_used = PhiBranch::series;
    return out;
  }

  // Scaled-erfc core: Phi(z) = (1/2) e^{-z^2/2} w(zeta) with
  // zeta = -i z / sqrt(2), which has Im(zeta) >= 0 for Re z <= 0.
  const cplx zeta(z.imag() * kInvSqrt2, -z.real() * kInvSqrt2);
  cplx w;
  if (std::abs(zeta) >= kCfCut) {
    w = faddeeva_cf(zeta);
    out.branch_used = PhiBranch::continued_fraction;
  } else {
    w = faddeeva_comb(zeta);
    out.branch_used = PhiBranch::series;
  }
  out.log_value = -0.5 * z * z + std::log(0.5 * w);
  out.value = std::exp(-0.5 * z * z) * (0.5 * w);
  return out;
}

}  // namespace

cplx faddeeva_upper(cplx zeta) {
  require(zeta.imag() >= 0.0, "faddeeva_upper: Im(zeta) >= 0 required");
  return std::abs(zeta) >= kCfCut ? faddeeva_cf(zeta) : faddeeva_comb(zeta);
}

PhiResult phi_complex(cplx z) {
  require(std::isfinite(z.real()) && std::isfinite(z.imag()), "phi_complex: finite z required");
  return z.real() > 0.0 ? phi_reflect(z) : phi_left(z);
}

MomentResult truncated_exp_moment(cplx w, Cutoff a) {
  MomentResult m;
  if (!a.is_finite) {
    m.log_value = 0.5 * w * w;
    m.value = std::exp(m.log_value);
    return m;
  }
  const PhiResult phi = phi_complex(cplx(a.a, 0.0) - w);
  m.log_value = 0.5 * w * w + phi.log_value;
  m.value = std::exp(m.log_value);
  return m;
}

MomentResult truncated_exp_moment_bivariate(double s, double sigma, double tau, double rho,
                                            Cutoff a) {
  require(std::abs(rho) <= 1.0, "truncated_exp_moment_bivariate: |rho| <= 1 required");
  MomentResult inner = truncated_exp_moment(s * cplx(sigma, tau * rho), a);
  const double damp = -0.5 * s * s * tau * tau * (1.0 - rho * rho);
  MomentResult m;
  m.log_value = inner.log_value + damp;
  m.value = std::exp(m.log_value);
  return m;
}

SaddleResult saddle_asymptotic(cplx w, const std::function<double(double)>& a_seq, double n) {
  require(n > 0.0, "saddle_asymptotic: n > 0 required");
  const double a = a_seq(n);
  require(std::isfinite(a), "saddle_asymptotic: a_seq(n) must be finite");
  const double u = w.real(), v = w.imag();

  SaddleResult out;
  if (v == 0.0) {
    const double c = (a - u) * std::sqrt(n);
    if (std::abs(c) <= 10.0) {
      // a(n) = w + c/sqrt(n): F(n) ~ Phi(c) e^{w^2 n/2}, exact for real w.
      out.regime = SaddleRegime::CriticalReal;
      out.log_value = 0.5 * w * w * n + phi_complex(cplx(c, 0.0)).log_value;
      out.value = std::exp(out.log_value);
      return out;
    }
  }

  const double up = u + std::abs(v), dn = u - std::abs(v);
  if (up == a)
    throw std::domain_error("saddle_asymptotic: u+|v| == a, regime ambiguous");

  const cplx log_saddle = 0.5 * w * w * n;
  auto log_boundary = [&]() {
    return n * (a * w - 0.5 * a * a) - 0.5 * std::log(kTwoPi * n) - std::log(w - cplx(a, 0.0));
  };

  if (up < a) {
    out.regime = SaddleRegime::SaddleDominated;
    out.log_value = log_saddle;
  } else if (dn < a) {
    out.regime = SaddleRegime::TwoTerm;
    const cplx lb = log_boundary();
    const double m = std::max(log_saddle.real(), lb.real());
    out.log_value = m + std::log(std::exp(log_saddle - m) + std::exp(lb - m));
  } else {
    out.regime = SaddleRegime::BoundaryDominated;
    out.log_value = log_boundary();
  }
  out.value = std::exp(out.log_value);
  return out;
}

double saddle_bounds_check(double w, double a) {
  require(w != a, "saddle_bounds_check: w != a required");
  return std::exp(a * w - 0.5 * a * a);
}

}  // namespace remlab
