#include "remlab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <thread>

namespace remlab {

namespace {

constexpr Eigen::Index kChunk = 4096;
constexpr double kCancelSentinel = 1e-14;  // |reduced sum| below this is "all cancelled"

struct Neumaier {
  double s = 0.0, c = 0.0;
  void add(double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  double total() const { return s + c; }
};

void check_precision_budget(const SampleBatch& b, double n) {
  if (n > 24.0 && !b.allow_large_n)
    throw std::domain_error(
        "partition: n > 24 exceeds the double-precision budget (pass allow_large_n)");
}

// Largest-term log-modulus sqrt(n) * max_k sigma * X_k.
double peak_log(const SampleBatch& b, double n, double sigma) {
  if (sigma == 0.0 || b.size() == 0) return 0.0;
  const double m = sigma > 0.0 ? b.x.maxCoeff() : b.x.minCoeff();
  return std::sqrt(n) * sigma * m;
}

}  // namespace

double compute_bn(double n) {
  require(n > 0.0, "compute_bn: n > 0 required");
  const double s = std::sqrt(2.0 * n);
  return s - std::log(4.0 * kPi * n) / (2.0 * s);
}

PartitionValue eval_point(const SampleBatch& batch, double n, ComplexParam beta) {
  require(batch.size() >= 1, "eval_point: empty batch");
  require(beta.finite(), "eval_point: beta must be finite");
  check_precision_budget(batch, n);
  const double sn = std::sqrt(n);
  const double as = beta.sigma * sn;
  const double at = beta.tau * sn;
  const double M = peak_log(batch, n, beta.sigma);

  Neumaier re, im;
  Eigen::ArrayXd amp, ph, c, s;
  for (Eigen::Index base = 0; base < batch.size(); base += kChunk) {
    const Eigen::Index len = std::min(kChunk, batch.size() - base);
    amp = (as * batch.x.segment(base, len) - M).exp();
    ph = at * batch.y.segment(base, len);
    c = ph.cos();
    s = ph.sin();
    Neumaier cre, cim;
    for (Eigen::Index k = 0; k < len; ++k) {
      cre.add(amp[k] * c[k]);
      cim.add(amp[k] * s[k]);
    }
    re.add(cre.total());
    im.add(cim.total());
  }
  const double sr = re.total(), si = im.total();
  const double mod = std::hypot(sr, si);
  PartitionValue v;
  if (mod < kCancelSentinel) {
    v.log_modulus = -std::numeric_limits<double>::infinity();
    v.phase = 0.0;
    v.cancellation_index = std::numeric_limits<double>::infinity();
    return v;
  }
  v.log_modulus = M + std::log(mod);
  v.phase = std::atan2(si, sr);
  v.cancellation_index = -std::log(mod);
  return v;
}

double log_partition(const SampleBatch& batch, double n, ComplexParam beta) {
  return eval_point(batch, n, beta).log_modulus / n;
}

namespace {

void grid_row(const SampleBatch& batch, double n, double sigma,
              const std::vector<double>& tau_axis, PartitionValue* out) {
  const Eigen::Index N = batch.size();
  const double sn = std::sqrt(n);
  const double M = peak_log(batch, n, sigma);
  Eigen::ArrayXd w = (sigma * sn * batch.x - M).exp();

  const std::size_t T = tau_axis.size();
  const bool uniform =
      T >= 2 && [&] {
        const double d0 = tau_axis[1] - tau_axis[0];
        for (std::size_t j = 2; j < T; ++j)
          if (std::abs((tau_axis[j] - tau_axis[j - 1]) - d0) > 1e-12 * std::abs(d0)) return false;
        return true;
      }();

  Eigen::ArrayXd rr(N), ri(N), dr(N), di(N);
  {
    Eigen::ArrayXd a0 = (tau_axis[0] * sn) * batch.y;
    rr = a0.cos();
    ri = a0.sin();
    if (uniform && T >= 2) {
      Eigen::ArrayXd ad = ((tau_axis[1] - tau_axis[0]) * sn) * batch.y;
      dr = ad.cos();
      di = ad.sin();
    }
  }

  for (std::size_t j = 0; j < T; ++j) {
    if (j > 0) {
      if (uniform) {
        // rotate in place; renormalize periodically against drift
        for (Eigen::Index k = 0; k < N; ++k) {
          const double nr = rr[k] * dr[k] - ri[k] * di[k];
          const double ni = rr[k] * di[k] + ri[k] * dr[k];
          rr[k] = nr;
          ri[k] = ni;
        }
        if (j % 128 == 0) {
          Eigen::ArrayXd norm = (rr.square() + ri.square()).sqrt();
          rr /= norm;
          ri /= norm;
        }
      } else {
        Eigen::ArrayXd aj = (tau_axis[j] * sn) * batch.y;
        rr = aj.cos();
        ri = aj.sin();
      }
    }
    Neumaier re, im;
    for (Eigen::Index base = 0; base < N; base += kChunk) {
      const Eigen::Index len = std::min(kChunk, N - base);
      Neumaier cre, cim;
      const double* wp = w.data() + base;
      const double* rp = rr.data() + base;
      const double* ip = ri.data() + base;
      for (Eigen::Index k = 0; k < len; ++k) {
        cre.add(wp[k] * rp[k]);
        cim.add(wp[k] * ip[k]);
      }
      re.add(cre.total());
      im.add(cim.total());
    }
    const double sr = re.total(), si = im.total();
    const double mod = std::hypot(sr, si);
    PartitionValue v;
    if (mod < kCancelSentinel) {
      v.log_modulus = -std::numeric_limits<double>::infinity();
      v.phase = 0.0;
      v.cancellation_index = std::numeric_limits<double>::infinity();
    } else {
      v.log_modulus = M + std::log(mod);
      v.phase = std::atan2(si, sr);
      v.cancellation_index = -std::log(mod);
    }
    out[j] = v;
  }
}

}  // namespace

GridEval eval_grid(const SampleBatch& batch, double n, std::vector<double> sigma_axis,
                   std::vector<double> tau_axis, const GridOptions& opts) {
  require(!sigma_axis.empty() && !tau_axis.empty(), "eval_grid: empty axes");
  require(std::is_sorted(sigma_axis.begin(), sigma_axis.end()), "eval_grid: sigma axis unsorted");
  require(std::is_sorted(tau_axis.begin(), tau_axis.end()), "eval_grid: tau axis unsorted");
  check_precision_budget(batch, n);

  const std::size_t per_thread = static_cast<std::size_t>(batch.size()) * 5 * sizeof(double);
  const int threads = std::max(1, opts.threads);
  const std::size_t estimate = per_thread * threads +
                               sigma_axis.size() * tau_axis.size() * sizeof(PartitionValue);
  if (estimate > opts.memory_budget_bytes)
    throw std::runtime_error("eval_grid: memory estimate exceeds the configured budget");

  GridEval g;
  g.sigma_axis = std::move(sigma_axis);
  g.tau_axis = std::move(tau_axis);
  g.values.resize(g.sigma_axis.size() * g.tau_axis.size());

  auto run_rows = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      grid_row(batch, n, g.sigma_axis[i], g.tau_axis,
               g.values.data() + i * g.tau_axis.size());
  };

  if (threads == 1 || g.sigma_axis.size() == 1) {
    run_rows(0, g.sigma_axis.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t rows = g.sigma_axis.size();
    const std::size_t per = (rows + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::size_t lo = std::min(rows, t * per);
      const std::size_t hi = std::min(rows, (t + 1) * per);
      if (lo < hi) pool.emplace_back(run_rows, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return g;
}

cplx local_frame_eval(const SampleBatch& batch, double n, ComplexParam beta0, LocalFrame frame,
                      cplx t) {
  const cplx b0 = beta0.value();
  switch (frame) {
    case LocalFrame::SqrtN_B3: {
      if (classify(beta0) != PhaseRegion::B3)
        throw std::invalid_argument("local_frame_eval: beta0 not in B3");
      const double sn = std::sqrt(n);
      const cplx beta = b0 + t / sn;
      const PartitionValue z = eval_point(batch, n, ComplexParam(beta));
      const cplx lv = n * (0.5 + (beta0.sigma + t / sn) * (beta0.sigma + t / sn));
      const cplx lm = n * (1.0 + 0.5 * beta * beta);
      const cplx main = z.is_zero() ? cplx(0, 0) : std::exp(z.log_value() - lv);
      return main - std::exp(lm - lv);
    }
    case LocalFrame::Boundary13: {
      if (std::abs(std::norm(b0) - 1.0) > 1e-9 || beta0.sigma * beta0.sigma >= 0.5)
        throw std::invalid_argument("local_frame_eval: beta0 not on the B1/B3 arc");
      const cplx shift = (t + cplx(0.0, delta_n(beta0, n))) / n;
      const cplx beta = b0 * (1.0 + shift);
      const PartitionValue z = eval_point(batch, n, ComplexParam(beta));
      const cplx arg = beta0.sigma + b0 * shift;
      const cplx lv = n * (0.5 + arg * arg);
      return z.is_zero() ? cplx(0, 0) : std::exp(z.log_value() - lv);
    }
    case LocalFrame::Boundary12: {
      if (std::abs(beta0.sigma + beta0.tau - kSqrt2) > 1e-9 || beta0.sigma <= kInvSqrt2 ||
          beta0.tau <= 0.0)
        throw std::invalid_argument("local_frame_eval: beta0 not on the B1/B2 segment");
      const cplx beta = b0 + (t + d_n_prime(beta0, n)) / ((b0 - kSqrt2) * n);
      const PartitionValue z = eval_point(batch, n, ComplexParam(beta));
      const cplx lv = beta * std::sqrt(n) * compute_bn(n);
      return z.is_zero() ? cplx(0, 0) : std::exp(z.log_value() - lv);
    }
  }
  throw std::logic_error("local_frame_eval: unknown frame");
}

double delta_n(ComplexParam beta0, double n) {
  if (std::abs(std::norm(beta0.value()) - 1.0) > 1e-9 || beta0.sigma * beta0.sigma >= 0.5)
    throw std::invalid_argument("delta_n: beta0 not on the B1/B3 arc");
  const double raw = n * beta0.sigma * beta0.tau;
  double d = std::fmod(raw, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  return d;
}

cplx d_n_prime(ComplexParam beta0, double n) {
  if (std::abs(beta0.sigma + beta0.tau - kSqrt2) > 1e-9 || beta0.sigma <= kInvSqrt2 ||
      beta0.tau <= 0.0)
    throw std::invalid_argument("d_n_prime: beta0 not on the B1/B2 segment");
  const double L = std::log(4.0 * kPi * n) / (2.0 * kSqrt2);
  const double re = -beta0.sigma * L;
  double im = beta0.tau * beta0.tau * n - beta0.tau * L;
  im = std::fmod(im, kTwoPi);
  if (im < 0.0) im += kTwoPi;
  return {re, im};
}

cplx d_n(ComplexParam beta0, double n) {
  return d_n_prime(beta0, n) / (kSqrt2 * beta0.tau);
}

cplx ExpSumModel::eval(cplx beta) const {
  const cplx dz = beta - center;
  cplx acc{0.0, 0.0};
  for (std::size_t j = coeff.size(); j-- > 0;) acc = acc * dz + coeff[j];
  return acc;
}

cplx ExpSumModel::deriv(cplx beta) const {
  const cplx dz = beta - center;
  cplx acc{0.0, 0.0};
  for (std::size_t j = coeff.size(); j-- > 1;)
    acc = acc * dz + static_cast<double>(j) * coeff[j];
  return acc;
}

ExpSumModel make_local_model(const SampleBatch& batch, double n, cplx center, double radius) {
  require(batch.rho == 1.0, "make_local_model: analytic Z_N requires rho = 1");
  require(radius > 0.0, "make_local_model: radius > 0");
  check_precision_budget(batch, n);
  const double sn = std::sqrt(n);
  const double fmax = sn * batch.x.abs().maxCoeff();
  const double rho_max = fmax * radius;

  // Truncation order: first J with rho^{J+1} e^{rho} / (J+1)! below 1e-18 * N.
  int J = static_cast<int>(rho_max) + 8;
  const double budget = std::log(1e-18) + std::log(static_cast<double>(batch.size()));
  while (J < 140) {
    const double lt = (J + 1) * std::log(std::max(rho_max, 1e-300)) + rho_max -
                      std::lgamma(static_cast<double>(J + 2));
    if (lt < budget) break;
    ++J;
  }
  if (J >= 140)
    throw std::runtime_error("make_local_model: radius too large for a certified model (tile)");

  ExpSumModel m;
  m.center = center;
  m.radius = radius;
  const double M = peak_log(batch, n, center.real());
  m.scale_log = M;
  std::vector<cplx> a(J + 1, cplx(0, 0));
  double tail = 0.0;
  for (Eigen::Index k = 0; k < batch.size(); ++k) {
    const double f = sn * batch.x[k];
    const cplx w0 = std::exp(center * f - M);
    cplx t = w0;
    for (int j = 0; j <= J; ++j) {
      a[j] += t;
      t *= f;
    }
    const double rho_k = std::abs(f) * radius;
    tail += std::abs(w0) * std::exp((J + 1) * std::log(std::max(rho_k, 1e-300)) + rho_k -
                                    std::lgamma(static_cast<double>(J + 2)));
  }
  m.coeff.resize(J + 1);
  double fact = 1.0;
  for (int j = 0; j <= J; ++j) {
    if (j > 0) fact *= j;
    m.coeff[j] = a[j] / fact;
  }
  m.tail_bound = tail;
  return m;
}

void write_grid_csv(const GridEval& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_grid_csv: cannot open " + path);
  out << "sigma,tau,log_modulus,phase,cancellation_index\n";
  char buf[160];
  for (std::size_t i = 0; i < grid.sigma_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.tau_axis.size(); ++j) {
      const PartitionValue& v = grid.at(i, j);
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", grid.sigma_axis[i],
                    grid.tau_axis[j], v.log_modulus, v.phase, v.cancellation_index);
      out << buf;
    }
  }
}

}  // namespace remlab
