#include "remlab/xi.hpp"

#include <cmath>

#include "remlab/quadrature.hpp"

namespace remlab {

double XiMeasure::segment_mass_per_segment() { return 0.5; }
double XiMeasure::arc_total_mass() { return kPi; }

namespace {

// 2 * integral of f over B3 within the support disk, tensor midpoint rule at
// the given per-axis resolution over the support bounding box.
double area_component(const std::function<double(cplx)>& f, cplx c, double R, int cells) {
  const double x0 = c.real() - R, x1 = c.real() + R;
  const double y0 = c.imag() - R, y1 = c.imag() + R;
  const double hx = (x1 - x0) / cells, hy = (y1 - y0) / cells;
  double acc = 0.0, comp = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double x = x0 + (i + 0.5) * hx;
    if (2.0 * x * x >= 1.0) continue;  // entire column outside B3
    double row = 0.0;
    for (int j = 0; j < cells; ++j) {
      const double y = y0 + (j + 0.5) * hy;
      if (x * x + y * y <= 1.0) continue;
      const double dx = x - c.real(), dy = y - c.imag();
      if (dx * dx + dy * dy > R * R) continue;
      row += f(cplx(x, y));
    }
    // Kahan on row sums keeps large grids honest.
    const double t = acc + (row - comp);
    comp = (t - acc) - row + comp;
    acc = t;
  }
  return 2.0 * acc * hx * hy;
}

}  // namespace

XiIntegral xi_integrate(const std::function<double(cplx)>& f, cplx support_center,
                        double support_radius, const XiQuadSpec& quad) {
  require(support_radius > 0.0 && std::isfinite(support_radius),
          "xi_integrate: positive finite support radius required");
  XiIntegral out;

  // --- area component over B3 (midpoint + Richardson over mesh halvings) ---
  std::vector<double> est;
  int cells = quad.area_cells;
  for (int r = 0; r <= quad.area_refinements; ++r, cells *= 2)
    est.push_back(area_component(f, support_center, support_radius, cells));
  double area = est.back();
  double area_err = est.size() > 1 ? std::abs(est.back() - est[est.size() - 2]) : 0.0;
  if (est.size() >= 2) {
    // One Richardson step assuming first-order boundary error.
    area = 2.0 * est.back() - est[est.size() - 2];
    area_err = std::abs(est.back() - est[est.size() - 2]);
  }
  out.area_part = area;

  // --- arcs of the unit circle with |sigma| < 1/sqrt(2) ---
  auto on_support = [&](cplx z) {
    return std::abs(z - support_center) <= support_radius;
  };
  double arc = 0.0, arc_err = 0.0;
  bool conv = true;
  const double th0 = kPi / 4.0, th1 = 3.0 * kPi / 4.0;
  for (int sign = 0; sign < 2; ++sign) {
    auto g = [&](double th) {
      cplx z(std::cos(th), std::sin(th));
      if (sign) z = std::conj(z);
      return on_support(z) ? f(z) : 0.0;
    };
    auto q = integrate_adaptive(g, th0, th1, quad.line_tol);
    arc += q.value;
    arc_err += q.abs_err;
    conv = conv && q.converged;
  }
  out.arc_part = arc;

  // --- segments |sigma|+|tau| = sqrt(2), |sigma| > 1/sqrt(2) ---
  // Parametrized by sigma; ds = sqrt(2) dsigma; density sqrt(2)|tau|.
  double seg = 0.0, seg_err = 0.0;
  for (int sx = 0; sx < 2; ++sx) {
    for (int sy = 0; sy < 2; ++sy) {
      auto g = [&](double s) {
        const double t = kSqrt2 - s;
        cplx z(sx ? -s : s, sy ? -t : t);
        return on_support(z) ? 2.0 * t * f(z) : 0.0;  // sqrt(2)*|tau| * sqrt(2)
      };
      auto q = integrate_adaptive(g, kInvSqrt2, kSqrt2, quad.line_tol);
      seg += q.value;
      seg_err += q.abs_err;
      conv = conv && q.converged;
    }
  }
  out.segment_part = seg;

  out.value = area + arc + seg;
  out.abs_err = area_err + arc_err + seg_err;
  out.converged = conv;
  if (!conv) throw std::runtime_error("xi_integrate: adaptive quadrature did not converge");
  return out;
}

TestField make_poly_bump(cplx center, double radius) {
  require(radius > 0.0, "make_poly_bump: radius > 0");
  const double a = 1.0 / (radius * radius);
  TestField tf;
  tf.center = center;
  tf.radius = radius;
  tf.f = [center, a](cplx z) {
    const double u = a * std::norm(z - center);
    if (u >= 1.0) return 0.0;
    const double v = 1.0 - u;
    return v * v * v;
  };
  tf.laplacian = [center, a](cplx z) {
    const double u = a * std::norm(z - center);
    if (u >= 1.0) return 0.0;
    return 12.0 * a * (1.0 - u) * (3.0 * u - 1.0);
  };
  return tf;
}

std::pair<double, double> laplacian_consistency(const GridSpec& grid, const TestField& field,
                                                const XiQuadSpec& quad) {
  require(grid.step > 0.0, "laplacian_consistency: positive step required");
  require(grid.sigma_hi > grid.sigma_lo && grid.tau_hi > grid.tau_lo,
          "laplacian_consistency: empty grid");
  if (grid.step > 2.0 * field.radius / 16.0)
    throw std::invalid_argument("laplacian_consistency: mesh too coarse for the test field");
  // The grid must cover the support disk.
  require(grid.sigma_lo <= field.center.real() - field.radius &&
              grid.sigma_hi >= field.center.real() + field.radius &&
              grid.tau_lo <= field.center.imag() - field.radius &&
              grid.tau_hi >= field.center.imag() + field.radius,
          "laplacian_consistency: grid does not cover supp f");

  const double h = grid.step;
  const int nx = static_cast<int>(std::floor((grid.sigma_hi - grid.sigma_lo) / h));
  const int ny = static_cast<int>(std::floor((grid.tau_hi - grid.tau_lo) / h));
  double lhs = 0.0, comp = 0.0;
  for (int i = 0; i < nx; ++i) {
    const double x = grid.sigma_lo + (i + 0.5) * h;
    double row = 0.0;
    for (int j = 0; j < ny; ++j) {
      const double y = grid.tau_lo + (j + 0.5) * h;
      const cplx z(x, y);
      const double lf = field.laplacian(z);
      if (lf != 0.0) row += limit_p(ComplexParam(z)) * lf;
    }
    const double t = lhs + (row - comp);
    comp = (t - lhs) - row + comp;
    lhs = t;
  }
  lhs *= h * h;
  const double rhs = xi_integrate(field.f, field.center, field.radius, quad).value;
  return {lhs, rhs};
}

}  // namespace remlab
