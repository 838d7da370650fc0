#include "remlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace remlab {

double kolmogorov_q(double lambda) {
  if (lambda < 1e-6) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsReport ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
  require(!sample.empty(), "ks_test: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::abs(f - i / n));
    d = std::max(d, std::abs((i + 1) / n - f));
  }
  const double sn = std::sqrt(n);
  return {d, kolmogorov_q((sn + 0.12 + 0.11 / sn) * d), sample.size()};
}

KsReport ks_two_sample(std::vector<double> a, std::vector<double> b) {
  require(!a.empty() && !b.empty(), "ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    // advance both sides through ties before comparing the empirical CDFs
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  const double ne = std::sqrt(static_cast<double>(a.size()) * b.size() / (a.size() + b.size()));
  return {d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d), a.size() + b.size()};
}

Chi2Report chi2_uniform_angles(const std::vector<double>& angles, int bins) {
  require(bins >= 2, "chi2_uniform_angles: need >= 2 bins");
  require(angles.size() >= static_cast<std::size_t>(5 * bins),
          "chi2_uniform_angles: too few samples");
  std::vector<int> counts(bins, 0);
  for (double a : angles) {
    double u = (a + kPi) / kTwoPi;
    u -= std::floor(u);
    int k = std::min(bins - 1, static_cast<int>(u * bins));
    counts[k]++;
  }
  const double expect = static_cast<double>(angles.size()) / bins;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
  return {chi2, gamma_q(0.5 * (bins - 1), 0.5 * chi2), bins};
}

namespace {

double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < 10000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  // Lentz continued fraction for Q(a, x).
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  require(a > 0.0 && x >= 0.0, "gamma_p: a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  require(a > 0.0 && x >= 0.0, "gamma_q: a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double mean(const std::vector<double>& v) {
  require(!v.empty(), "mean: empty");
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double variance(const std::vector<double>& v) {
  require(v.size() >= 2, "variance: need >= 2");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

double median(std::vector<double> v) {
  require(!v.empty(), "median: empty");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + mid - 1, v.end());
  return 0.5 * (hi + v[mid - 1]);
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  require(a.size() == b.size() && a.size() >= 2, "correlation: size mismatch");
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

double trimmed_variance(std::vector<double> v, double trim_fraction) {
  require(v.size() >= 10, "trimmed_variance: too few samples");
  require(trim_fraction >= 0.0 && trim_fraction < 0.5, "trimmed_variance: bad fraction");
  const double med = median(v);
  std::sort(v.begin(), v.end(), [med](double a, double b) {
    return std::abs(a - med) < std::abs(b - med);
  });
  const std::size_t keep = v.size() - static_cast<std::size_t>(trim_fraction * v.size());
  v.resize(std::max<std::size_t>(keep, 2));
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / v.size();
}

LineFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 3, "ols: need >= 3 points");
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.slope_stderr = std::sqrt(ss / (x.size() - 2) / sxx);
  return f;
}

namespace {

double ecf_abs(const std::vector<cplx>& s, double r) {
  // average over 8 directions for isotropy and variance reduction
  double acc = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double th = kPi * k / 8.0;
    const cplx z = std::polar(r, th);
    cplx e{0.0, 0.0};
    for (const cplx& v : s) {
      const double phase = v.real() * z.real() + v.imag() * z.imag();
      e += cplx(std::cos(phase), std::sin(phase));
    }
    acc += std::abs(e) / s.size();
  }
  return acc / 8.0;
}

}  // namespace

EcfAlphaFit ecf_alpha_regression(const std::vector<cplx>& samples) {
  require(samples.size() >= 200, "ecf_alpha_regression: too few samples");
  std::vector<double> mods(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) mods[i] = std::abs(samples[i]);
  const double scale = median(mods);
  require(scale > 0.0, "ecf_alpha_regression: degenerate sample");

  // bracket r where |phi| crosses 0.85 and 0.15
  double r_lo = 1e-3 / scale, r_hi = 1.0 / scale;
  while (ecf_abs(samples, r_hi) > 0.15 && r_hi < 1e6 / scale) r_hi *= 1.6;
  while (ecf_abs(samples, r_lo) < 0.85 && r_lo > 1e-9 / scale) r_lo /= 1.6;

  std::vector<double> lx, ly;
  const int grid = 12;
  for (int i = 0; i < grid; ++i) {
    const double r = r_lo * std::pow(r_hi / r_lo, (i + 0.5) / grid);
    const double p = ecf_abs(samples, r);
    if (p < 0.12 || p > 0.88) continue;
    lx.push_back(std::log(r));
    ly.push_back(std::log(-std::log(p)));
  }
  if (lx.size() < 4)
    throw std::runtime_error("ecf_alpha_regression: grid too narrow / ill-conditioned");
  const LineFit f = ols(lx, ly);
  return {f.slope, f.slope_stderr, static_cast<int>(lx.size())};
}

}  // namespace remlab
