#include "remlab/analytic.hpp"

#include <cmath>

#include "remlab/zeros.hpp"

namespace remlab {

GafSample gaf_sample(double disk_radius, std::uint64_t seed, std::uint64_t stream) {
  require(disk_radius >= 0.0, "gaf_sample: radius >= 0");
  GafSample s;
  s.disk_radius = disk_radius;
  // K >= e R^2 + 40 puts the tail sd below 1e-8 * e^{R^2/2} on the disk.
  s.truncation_K = static_cast<int>(std::ceil(std::exp(1.0) * disk_radius * disk_radius)) + 40;
  s.coeffs.resize(s.truncation_K + 1);
  RngStream rng(seed, stream);
  for (cplx& c : s.coeffs) {
    const double g1 = rng.normal();
    const double g2 = rng.normal();
    c = kInvSqrt2 * cplx(g1, g2);  // standard complex Gaussian, E|xi|^2 = 1
  }
  return s;
}

cplx gaf_eval(const GafSample& sample, cplx t) {
  if (std::abs(t) > sample.disk_radius + 1e-12)
    throw std::domain_error("gaf_eval: t outside the certified disk");
  cplx term{1.0, 0.0};  // t^k / sqrt(k!)
  cplx acc = sample.coeffs[0];
  for (int k = 1; k < static_cast<int>(sample.coeffs.size()); ++k) {
    term *= t / std::sqrt(static_cast<double>(k));
    acc += sample.coeffs[k] * term;
  }
  return acc;
}

cplx gaf_deriv(const GafSample& sample, cplx t) {
  if (std::abs(t) > sample.disk_radius + 1e-12)
    throw std::domain_error("gaf_deriv: t outside the certified disk");
  cplx term{1.0, 0.0};  // t^{k-1} / sqrt(k!) * k, built iteratively
  cplx acc{0.0, 0.0};
  for (int k = 1; k < static_cast<int>(sample.coeffs.size()); ++k) {
    acc += sample.coeffs[k] * std::sqrt(static_cast<double>(k)) * term;
    term *= t / std::sqrt(static_cast<double>(k));
  }
  return acc;
}

GafZeroStats gaf_zero_stats(double radius, int replicas, std::uint64_t seed) {
  require(radius >= 0.0, "gaf_zero_stats: radius >= 0");
  require(replicas >= 1, "gaf_zero_stats: replicas >= 1");
  GafZeroStats out;
  if (radius == 0.0) {
    out.counts.assign(replicas, 0);
    return out;
  }
  double total = 0.0;
  for (int r = 0; r < replicas; ++r) {
    const GafSample g = gaf_sample(radius * 1.5, seed, stream_index(r, Purpose::Gaf));
    AnalyticHandle h;
    h.eval = [&g](cplx z) { return gaf_eval(g, z); };
    h.deriv = [&g](cplx z) { return gaf_deriv(g, z); };
    h.domain = Rect::around(cplx(0, 0), radius, radius);
    ZeroSet zs = locate_zeros(h, h.domain);
    int count = 0;
    for (const Zero& z : zs.zeros)
      if (std::abs(z.z) < radius) count += z.multiplicity;
    out.counts.push_back(count);
    total += count;
  }
  out.mean_count = total / replicas;
  return out;
}

// ---------------------------------------------------------------------------

ZetaPSample zetap_sample(double horizon, std::uint64_t seed, std::uint64_t stream) {
  ZetaPSample s;
  s.arrivals = poisson_arrivals(horizon, seed, stream);
  s.log_p.resize(s.arrivals.p.size());
  for (std::size_t k = 0; k < s.log_p.size(); ++k) s.log_p[k] = std::log(s.arrivals.p[k]);
  return s;
}

namespace {

// int_1^T t^{-beta} dt = (T^{1-beta} - 1)/(1 - beta), log T at beta = 1.
cplx compensator(cplx beta, double horizon) {
  const double L = std::log(horizon);
  const cplx u = 1.0 - beta;
  if (u == cplx(0.0, 0.0)) return {L, 0.0};
  return expm1_c(u * L) / u;
}

// d/dbeta of the compensator: -(L e^{uL} - I(u))/u with I the compensator.
cplx compensator_deriv(cplx beta, double horizon) {
  const double L = std::log(horizon);
  const cplx u = 1.0 - beta;
  if (std::abs(u * L) < 1e-4) {
    return -(0.5 * L * L + u * L * L * L / 3.0);
  }
  const cplx I = expm1_c(u * L) / u;
  return -(L * std::exp(u * L) - I) / u;
}

}  // namespace

cplx zetap_tilde_eval(const ZetaPSample& sample, cplx beta) {
  require(beta.real() > 0.5, "zetap_tilde_eval: Re beta > 1/2 required");
  double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0;  // Kahan pair
  for (double lp : sample.log_p) {
    const cplx term = std::exp(-beta * lp);
    double y = term.real() - cr;
    double t = sr + y;
    cr = (t - sr) - y;
    sr = t;
    y = term.imag() - ci;
    t = si + y;
    ci = (t - si) - y;
    si = t;
  }
  return cplx(sr, si) - compensator(beta, sample.arrivals.horizon);
}

cplx zetap_tilde_deriv(const ZetaPSample& sample, cplx beta) {
  require(beta.real() > 0.5, "zetap_tilde_deriv: Re beta > 1/2 required");
  cplx acc{0.0, 0.0};
  for (double lp : sample.log_p) acc += -lp * std::exp(-beta * lp);
  return acc - compensator_deriv(beta, sample.arrivals.horizon);
}

cplx zetap_eval(const ZetaPSample& sample, cplx beta) {
  if (std::abs(beta - 1.0) < 1e-6)
    throw std::domain_error("zetap_eval: pole at beta = 1 (use zetap_tilde_eval)");
  return zetap_tilde_eval(sample, beta) + 1.0 / (beta - 1.0);
}

cplx zetap_deriv(const ZetaPSample& sample, cplx beta) {
  if (std::abs(beta - 1.0) < 1e-6)
    throw std::domain_error("zetap_deriv: pole at beta = 1");
  return zetap_tilde_deriv(sample, beta) - 1.0 / ((beta - 1.0) * (beta - 1.0));
}

double zetap_tail_sd(cplx beta, double horizon) {
  const double s = beta.real();
  require(s > 0.5, "zetap_tail_sd: Re beta > 1/2 required");
  return std::sqrt(std::pow(horizon, 1.0 - 2.0 * s) / (2.0 * s - 1.0));
}

double zetap_choose_horizon(cplx beta, double tol) {
  const double s = beta.real();
  require(tol > 0.0, "zetap_choose_horizon: tol > 0 required");
  if (s <= 0.5)
    throw std::domain_error("zetap_choose_horizon: tol unreachable for Re beta <= 1/2");
  const double T = std::pow(tol * tol * (2.0 * s - 1.0), 1.0 / (1.0 - 2.0 * s));
  return std::max(1.0, T);
}

cplx ZetaLocalModel::eval(cplx beta) const {
  const cplx dz = beta - center;
  cplx acc{0.0, 0.0};
  for (std::size_t j = coeff.size(); j-- > 0;) acc = acc * dz + coeff[j];
  if (has_pole) acc += 1.0 / (beta - 1.0);
  return acc;
}

cplx ZetaLocalModel::deriv(cplx beta) const {
  const cplx dz = beta - center;
  cplx acc{0.0, 0.0};
  for (std::size_t j = coeff.size(); j-- > 1;)
    acc = acc * dz + static_cast<double>(j) * coeff[j];
  if (has_pole) acc -= 1.0 / ((beta - 1.0) * (beta - 1.0));
  return acc;
}

ZetaLocalModel zetap_local_model(const ZetaPSample& sample, cplx center, double radius,
                                 bool include_pole) {
  require(center.real() - radius > 0.5, "zetap_local_model: disk must stay in Re > 1/2");
  require(radius > 0.0, "zetap_local_model: radius > 0");
  const double L = std::log(std::max(sample.arrivals.horizon, 2.0));
  const double rho_max = L * radius;
  int J = static_cast<int>(rho_max) + 8;
  const double budget =
      std::log(1e-18) + std::log(static_cast<double>(sample.log_p.size() + 2));
  while (J < 160) {
    const double lt = (J + 1) * std::log(std::max(rho_max, 1e-300)) + rho_max -
                      std::lgamma(static_cast<double>(J + 2));
    if (lt < budget) break;
    ++J;
  }
  if (J >= 160)
    throw std::runtime_error("zetap_local_model: radius too large for a certified model");

  ZetaLocalModel m;
  m.center = center;
  m.radius = radius;
  std::vector<cplx> a(J + 1, cplx(0, 0));
  for (double lp : sample.log_p) {
    const cplx w0 = std::exp(-center * lp);
    cplx t = w0;
    for (int j = 0; j <= J; ++j) {
      a[j] += t;
      t *= -lp;
    }
  }
  // compensator derivatives: d^m/du^m of (e^{uL}-1)/u equals
  //   I_m(u) = int_0^L s^m e^{us} ds = L^{m+1} sum_k (uL)^k / (k! (m+k+1)),
  // an absolutely convergent series (mild cancellation ~ e^{|uL|}).
  const cplx u = 1.0 - center;
  std::vector<cplx> icomp(J + 1);
  {
    const cplx uL = u * L;
    for (int mth = 0; mth <= J; ++mth) {
      cplx term{1.0, 0.0};  // (uL)^k / k!
      cplx acc = term / static_cast<double>(mth + 1);
      for (int k = 1; k < 400; ++k) {
        term *= uL / static_cast<double>(k);
        const cplx add = term / static_cast<double>(mth + k + 1);
        acc += add;
        if (std::abs(add) < 1e-20 * std::abs(acc) + 1e-300) break;
      }
      icomp[mth] = std::pow(L, mth + 1) * acc;
    }
  }

  m.coeff.resize(J + 1);
  double fact = 1.0;
  for (int j = 0; j <= J; ++j) {
    if (j > 0) fact *= j;
    const double sgn = (j % 2 == 0) ? 1.0 : -1.0;  // d^j/dbeta^j = (-1)^j d^j/du^j
    m.coeff[j] = a[j] / fact - sgn * icomp[j] / fact;
  }
  if (include_pole) {
    require(std::abs(center - 1.0) > radius + 1e-9,
            "zetap_local_model: pole inside the model disk");
    m.has_pole = true;
  }
  return m;
}

}  // namespace remlab
