#include "remlab/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "remlab/partition.hpp"

namespace remlab {

SampleBatch gaussian_pairs(const RemConfig& cfg, std::uint64_t stream) {
  require(std::abs(cfg.rho) <= 1.0, "gaussian_pairs: |rho| <= 1 required");
  require(cfg.N >= 1, "gaussian_pairs: N >= 1 required");
  SampleBatch b;
  b.rho = cfg.rho;
  b.seed = cfg.seed;
  b.stream = stream;
  b.allow_large_n = cfg.allow_large_n;
  b.x.resize(cfg.N);
  b.y.resize(cfg.N);
  RngStream rng(cfg.seed, stream);
  const double c = std::sqrt(1.0 - cfg.rho * cfg.rho);
  for (Eigen::Index k = 0; k < cfg.N; ++k) {
    const double x = rng.normal();
    const double w = rng.normal();
    b.x[k] = x;
    b.y[k] = cfg.rho * x + c * w;
  }
  return b;
}

PoissonArrivals poisson_arrivals(double horizon, std::uint64_t seed, std::uint64_t stream) {
  require(horizon > 0.0, "poisson_arrivals: horizon > 0 required");
  PoissonArrivals a;
  a.horizon = horizon;
  RngStream rng(seed, stream);
  double t = rng.exponential();
  while (t <= horizon) {
    a.p.push_back(t);
    t += rng.exponential();
  }
  return a;
}

double positive_stable(double alpha_half, RngStream& rng) {
  require(alpha_half > 0.0 && alpha_half < 1.0, "positive_stable: alpha_half in (0,1)");
  const double al = alpha_half;
  const double u = kPi * rng.uniform();  // uniform angle on (0, pi)
  const double e = rng.exponential();
  // A(u) = sin(al u)^{al/(1-al)} sin((1-al) u) / sin(u)^{1/(1-al)};
  // S = (A(u)/e)^{(1-al)/al} has Laplace transform exp(-s^al).
  const double log_a = (al / (1.0 - al)) * std::log(std::sin(al * u)) +
                       std::log(std::sin((1.0 - al) * u)) -
                       (1.0 / (1.0 - al)) * std::log(std::sin(u));
  return std::exp(((1.0 - al) / al) * (log_a - std::log(e)));
}

cplx isotropic_stable_complex(double alpha, RngStream& rng) {
  require(alpha > 0.0 && alpha < 2.0, "isotropic_stable_complex: alpha in (0,2)");
  const double a = positive_stable(0.5 * alpha, rng);
  const double g1 = rng.normal();
  const double g2 = rng.normal();
  return std::sqrt(a) * cplx(g1, g2);
}

std::vector<double> extremal_rescaled_points(const SampleBatch& batch, double n, int top_k) {
  require(batch.size() > 0, "extremal_rescaled_points: empty batch");
  require(top_k >= 1 && top_k <= batch.size(), "extremal_rescaled_points: bad top_k");
  std::vector<double> xs(batch.x.data(), batch.x.data() + batch.size());
  std::partial_sort(xs.begin(), xs.begin() + top_k, xs.end(), std::greater<double>());
  const double bn = compute_bn(n);
  const double sn = std::sqrt(n);
  std::vector<double> out(top_k);
  for (int k = 0; k < top_k; ++k) out[k] = sn * (xs[k] - bn);
  return out;
}

}  // namespace remlab
