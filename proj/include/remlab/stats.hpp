#pragma once

#include <functional>
#include <vector>

#include "remlab/types.hpp"

namespace remlab {

// Statistical machinery shared by the verification suites: KS tests, a chi^2
// uniformity test, robust scale estimates and the characteristic-function
// exponent regression used for stable laws.

struct KsReport {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

// One-sample KS against a callable CDF.
KsReport ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);

// Two-sample KS.
KsReport ks_two_sample(std::vector<double> a, std::vector<double> b);

// Chi-square uniformity test of angles in (-pi, pi].
struct Chi2Report {
  double statistic = 0.0;
  double p_value = 1.0;
  int bins = 0;
};
Chi2Report chi2_uniform_angles(const std::vector<double>& angles, int bins = 12);

// Regularized incomplete gamma functions P(a,x), Q(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

double mean(const std::vector<double>& v);
double variance(const std::vector<double>& v);  // unbiased
double median(std::vector<double> v);
double correlation(const std::vector<double>& a, const std::vector<double>& b);

// Variance of the central bulk: drops the `trim_fraction` of samples farthest
// from the median before taking the (biased) second moment about the mean of
// what is left.  The estimator of choice for heavy-tailed limits whose bulk
// is the object of interest.
double trimmed_variance(std::vector<double> v, double trim_fraction);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};
LineFit ols(const std::vector<double>& x, const std::vector<double>& y);

// Empirical-characteristic-function exponent regression for isotropic stable
// samples: fits log(-log |phi_hat(r)|) = log c + alpha log r over a radial
// grid placed where |phi_hat| is well conditioned.  Throws if fewer than 4
// usable grid points remain.
struct EcfAlphaFit {
  double alpha = 0.0;
  double stderr_alpha = 0.0;
  int points = 0;
};
EcfAlphaFit ecf_alpha_regression(const std::vector<cplx>& samples);

// Kolmogorov tail Q(lambda) = 2 sum (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

}  // namespace remlab
