#include "remlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace remlab {

namespace {

GaussRule make_rule(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, then Newton on the Legendre recurrence.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return r;
}

std::map<int, GaussRule> g_rules;
std::mutex g_rules_mtx;

template <typename T>
T gauss_apply(const std::function<T(double)>& f, double a, double b, const GaussRule& r) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  T acc{};
  for (size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(mid + half * r.x[i]);
  return half * acc;
}

template <typename T>
struct Generic {
  T value{};
  double abs_err = 0.0;
  bool converged = true;
};

template <typename T>
Generic<T> adaptive_impl(const std::function<T(double)>& f, double a, double b, double abs_tol,
                         int max_intervals) {
  const GaussRule& lo = gauss_legendre(12);
  const GaussRule& hi = gauss_legendre(25);
  struct Seg {
    double a, b, tol;
  };
  std::vector<Seg> stack{{a, b, abs_tol}};
  Generic<T> out;
  int used = 0;
  while (!stack.empty()) {
    if (++used > max_intervals) {
      out.converged = false;
      break;
    }
    const Seg s = stack.back();
    stack.pop_back();
    const T vlo = gauss_apply(f, s.a, s.b, lo);
    const T vhi = gauss_apply(f, s.a, s.b, hi);
    const double d = std::abs(vhi - vlo);
    if (d <= s.tol || (s.b - s.a) < 1e-14 * (std::abs(s.a) + std::abs(s.b) + 1.0)) {
      out.value += vhi;
      out.abs_err += d;
    } else {
      const double m = 0.5 * (s.a + s.b);
      stack.push_back({s.a, m, 0.5 * s.tol});
      stack.push_back({m, s.b, 0.5 * s.tol});
    }
  }
  return out;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  std::lock_guard<std::mutex> lk(g_rules_mtx);
  auto it = g_rules.find(order);
  if (it == g_rules.end()) it = g_rules.emplace(order, make_rule(order)).first;
  return it->second;
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_intervals) {
  auto g = adaptive_impl<double>(f, a, b, abs_tol, max_intervals);
  return {g.value, g.abs_err, g.converged};
}

QuadResultC integrate_adaptive_c(const std::function<cplx(double)>& f, double a, double b,
                                 double abs_tol, int max_intervals) {
  auto g = adaptive_impl<cplx>(f, a, b, abs_tol, max_intervals);
  return {g.value, g.abs_err, g.converged};
}

}  // namespace remlab
