#include "remlab/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "remlab/analytic.hpp"
#include "remlab/stats.hpp"

namespace remlab {

namespace {

constexpr double kModFloorRel = 1e-12;     // boundary-zero suspicion threshold
constexpr double kJitter = 1e-7;           // deterministic jitter unit
constexpr int kMaxEdgeEvals = 1 << 20;
constexpr int kMaxDepth = 64;
constexpr double kTinyCell = 1e-9;         // multiplicity reporting scale

struct ContourStats {
  int winding = 0;
  double min_mod = 0.0;
  double max_mod = 0.0;
};

cplx eval_checked(const AnalyticHandle& h, cplx z) { return h.eval(z); }

// Adaptive phase tracking along one edge; every accepted increment < pi/2.
void walk_edge(const AnalyticHandle& h, cplx za, cplx zb, double& total, double& min_mod,
               double& max_mod, int& evals) {
  struct Seg {
    cplx za, zb;
    cplx va, vb;
  };
  const cplx va0 = eval_checked(h, za), vb0 = eval_checked(h, zb);
  evals += 2;
  std::vector<Seg> stack{{za, zb, va0, vb0}};
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    const double ma = std::abs(s.va), mb = std::abs(s.vb);
    min_mod = std::min({min_mod, ma, mb});
    max_mod = std::max({max_mod, ma, mb});
    if (ma == 0.0 || mb == 0.0)
      throw BoundaryZeroSuspicion("winding: exact zero on the contour");
    const double dph = std::arg(s.vb / s.va);
    if (std::abs(dph) < 0.5 * kPi) {
      total += dph;
      continue;
    }
    if (++evals > kMaxEdgeEvals)
      throw BoundaryZeroSuspicion("winding: edge sampling cap hit (zero on or near edge)");
    const cplx zm = 0.5 * (s.za + s.zb);
    if (std::abs(zm - s.za) < 1e-15 * (std::abs(zm) + 1.0))
      throw BoundaryZeroSuspicion("winding: phase jump at point scale");
    const cplx vm = eval_checked(h, zm);
    stack.push_back({s.za, zm, s.va, vm});
    stack.push_back({zm, s.zb, vm, s.vb});
  }
}

ContourStats contour_winding(const AnalyticHandle& h, const Rect& r) {
  const cplx c0(r.x0, r.y0), c1(r.x1, r.y0), c2(r.x1, r.y1), c3(r.x0, r.y1);
  double total = 0.0;
  double min_mod = std::numeric_limits<double>::infinity();
  double max_mod = 0.0;
  int evals = 0;
  // seed extra interior points per edge so short-period phase wraps are seen
  auto walk_refined = [&](cplx a, cplx b) {
    const int pre = 8;
    for (int i = 0; i < pre; ++i) {
      const cplx za = a + (b - a) * (static_cast<double>(i) / pre);
      const cplx zb = a + (b - a) * (static_cast<double>(i + 1) / pre);
      walk_edge(h, za, zb, total, min_mod, max_mod, evals);
    }
  };
  walk_refined(c0, c1);
  walk_refined(c1, c2);
  walk_refined(c2, c3);
  walk_refined(c3, c0);

  const double floor_abs = std::max(kModFloorRel * max_mod, 16.0 * h.abs_tolerance);
  if (min_mod <= floor_abs)
    throw BoundaryZeroSuspicion("winding: boundary modulus under the certification floor");

  const double turns = total / kTwoPi;
  const int w = static_cast<int>(std::lround(turns));
  if (std::abs(turns - w) > 0.25)
    throw BoundaryZeroSuspicion("winding: non-integer phase total");
  return {w, min_mod, max_mod};
}

cplx numeric_deriv(const AnalyticHandle& h, cplx z, double scale) {
  const double dd = std::max(1e-7 * scale, 1e-12);
  const cplx d1 = (h.eval(z + dd) - h.eval(z - dd)) / (2.0 * dd);
  const cplx d2 = (h.eval(z + 2.0 * dd) - h.eval(z - 2.0 * dd)) / (4.0 * dd);
  return (4.0 * d1 - d2) / 3.0;  // Richardson
}

struct Engine {
  const AnalyticHandle& h;
  int target;
  ZeroSet out;

  ContourStats winding_with_jitter(Rect r) const {
    for (int attempt = 0;; ++attempt) {
      try {
        return contour_winding(h, r);
      } catch (const BoundaryZeroSuspicion&) {
        if (attempt >= 7) throw;
        const double j = kJitter * std::pow(3.0, attempt) * std::max(1.0, r.diameter());
        r = Rect{r.x0 + j, r.x1 + j, r.y0 + j, r.y1 + j};
      }
    }
  }

  void newton_polish(const Rect& cell, int w, double max_mod) {
    cplx z = cell.center();
    const double diam = cell.diameter();
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      const cplx f = h.eval(z);
      const cplx df = h.deriv ? h.deriv(z) : numeric_deriv(h, z, diam);
      if (df == cplx(0.0, 0.0)) break;
      const cplx step = f / df;
      z -= step;
      if (!cell.contains(z)) break;
      if (std::abs(step) < 1e-11 * diam) {
        converged = true;
        break;
      }
    }
    if (converged && cell.contains(z)) {
      out.zeros.push_back({z, w, std::abs(h.eval(z)) / max_mod});
      out.cells.push_back({cell, w, true});
      return;
    }
    // fall back to quadrisection
    subdivide(cell, w, 0);
  }

  void recurse(const Rect& cell, int w, int depth) {
    if (w == 0) {
      out.cells.push_back({cell, 0, true});
      return;
    }
    if (cell.diameter() < kTinyCell) {
      // winding > 1 in a tiny cell: one zero with multiplicity
      out.zeros.push_back({cell.center(), w, 0.0});
      out.cells.push_back({cell, w, true});
      return;
    }
    if (depth >= kMaxDepth) {
      out.cells.push_back({cell, w, false});
      return;
    }
    if (w == 1) {
      ContourStats cs{};
      try {
        cs = winding_with_jitter(cell);
      } catch (const BoundaryZeroSuspicion&) {
        cs.max_mod = 1.0;
      }
      newton_polish(cell, w, cs.max_mod > 0 ? cs.max_mod : 1.0);
      return;
    }
    subdivide(cell, w, depth);
  }

  void subdivide(const Rect& cell, int w, int depth) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      const double j = kJitter * std::pow(3.0, attempt) * cell.diameter();
      const double mx = 0.5 * (cell.x0 + cell.x1) + j;
      const double my = 0.5 * (cell.y0 + cell.y1) + j;
      if (mx <= cell.x0 || mx >= cell.x1 || my <= cell.y0 || my >= cell.y1) break;
      const Rect quads[4] = {{cell.x0, mx, cell.y0, my},
                             {mx, cell.x1, cell.y0, my},
                             {cell.x0, mx, my, cell.y1},
                             {mx, cell.x1, my, cell.y1}};
      int ws[4];
      bool ok = true;
      int sum = 0;
      for (int q = 0; q < 4 && ok; ++q) {
        try {
          ws[q] = contour_winding(h, quads[q]).winding;
          sum += ws[q];
        } catch (const BoundaryZeroSuspicion&) {
          ok = false;
        }
      }
      if (ok && sum == w) {
        for (int q = 0; q < 4; ++q) recurse(quads[q], ws[q], depth + 1);
        return;
      }
    }
    // could not split cleanly; report the parent as unresolved
    out.cells.push_back({cell, w, false});
  }
};

}  // namespace

int ZeroSet::total_multiplicity() const {
  int t = 0;
  for (const Zero& z : zeros) t += z.multiplicity;
  return t;
}

int ZeroSet::total_winding() const {
  int t = 0;
  for (const CertifiedCell& c : cells) t += c.winding;
  return t;
}

int count_zeros_winding(const AnalyticHandle& h, const Rect& rect) {
  return contour_winding(h, rect).winding;
}

ZeroSet locate_zeros(const AnalyticHandle& h, Rect rect, int target_cell_zeros) {
  require(target_cell_zeros >= 1, "locate_zeros: target >= 1");
  Engine eng{h, target_cell_zeros, {}};
  // If the supplied rectangle itself carries a boundary suspicion, the whole
  // computation moves to the jittered rectangle.
  for (int attempt = 0;; ++attempt) {
    try {
      const ContourStats top = contour_winding(h, rect);
      eng.recurse(rect, top.winding, 0);
      return std::move(eng.out);
    } catch (const BoundaryZeroSuspicion&) {
      if (attempt >= 7) throw;
      const double j = kJitter * std::pow(3.0, attempt) * std::max(1.0, rect.diameter());
      rect = Rect{rect.x0 + j, rect.x1 + j, rect.y0 + j, rect.y1 + j};
    }
  }
}

double empirical_zero_measure(const ZeroSet& zs, const std::function<double(cplx)>& f,
                              double n) {
  require(n > 0.0, "empirical_zero_measure: n > 0");
  double acc = 0.0;
  for (const Zero& z : zs.zeros) acc += z.multiplicity * f(z.z);
  return acc / n;
}

std::vector<double> spacing_stats(const ZeroSet& zs, cplx direction) {
  require(std::abs(std::abs(direction) - 1.0) < 1e-9, "spacing_stats: unit direction required");
  require(zs.zeros.size() >= 3, "spacing_stats: need >= 3 zeros");
  std::vector<double> proj;
  proj.reserve(zs.zeros.size());
  for (const Zero& z : zs.zeros)
    for (int m = 0; m < z.multiplicity; ++m)
      proj.push_back(z.z.real() * direction.real() + z.z.imag() * direction.imag());
  std::sort(proj.begin(), proj.end());
  std::vector<double> gaps(proj.size() - 1);
  for (std::size_t i = 0; i + 1 < proj.size(); ++i) gaps[i] = proj[i + 1] - proj[i];
  return gaps;
}

namespace {

AnalyticHandle model_handle(const ExpSumModel& m, Rect domain) {
  AnalyticHandle h;
  h.eval = [m](cplx z) { return m.eval(z); };
  h.deriv = [m](cplx z) { return m.deriv(z); };
  h.domain = domain;
  h.abs_tolerance = m.tail_bound;
  return h;
}

}  // namespace

ZeroSet zeros_in_window(const SampleBatch& batch, double n, Rect window) {
  const cplx c = window.center();
  const double r = 0.65 * window.diameter() + 0.05;
  const ExpSumModel model = make_local_model(batch, n, c, r);
  ZeroSet zs = locate_zeros(model_handle(model, window), window);
  return zs;
}

ZeroSet local_zero_process(const SampleBatch& batch, double n, ComplexParam beta0,
                           double window_radius) {
  require(window_radius > 0.0, "local_zero_process: radius > 0");
  if (classify(beta0) != PhaseRegion::B3)
    throw std::invalid_argument("local_zero_process: beta0 must lie strictly inside B3");
  const double rr = window_radius / std::sqrt(n);
  // distance from beta0 to the boundary of B3 must exceed the window
  const double dist_circle = std::abs(std::abs(beta0.value()) - 1.0);
  const double dist_line = kInvSqrt2 - std::abs(beta0.sigma);
  if (std::min(dist_circle, dist_line) <= rr)
    throw std::invalid_argument("local_zero_process: window touches the B3 boundary");

  Rect window = Rect::around(beta0.value(), rr, rr);
  ZeroSet raw = zeros_in_window(batch, n, window);
  ZeroSet out;
  out.frame_origin = beta0.value();
  out.frame_scale = std::sqrt(n);
  out.cells = raw.cells;
  for (const Zero& z : raw.zeros) {
    if (std::abs(z.z - beta0.value()) > rr) continue;
    out.zeros.push_back({out.frame_scale * (z.z - out.frame_origin), z.multiplicity, z.residual});
  }
  return out;
}

namespace {

std::vector<double> nn_distances(const std::vector<cplx>& pts) {
  std::vector<double> d;
  if (pts.size() < 2) return d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) best = std::min(best, std::abs(pts[i] - pts[j]));
    d.push_back(best);
  }
  return d;
}

}  // namespace

ZetaCompareSummary zetap_zero_compare(const RemConfig& cfg, Rect region, int replicas) {
  require(cfg.rho == 1.0, "zetap_zero_compare: rho = 1 required");
  require(replicas >= 2, "zetap_zero_compare: need >= 2 replicas");
  const double min_sigma = region.x0;
  const double min_edge = std::min(std::abs(region.y0), std::abs(region.y1));
  const bool same_sign_tau = region.y0 * region.y1 > 0.0;
  require(same_sign_tau, "zetap_zero_compare: region must avoid the real axis");
  const double corner_l = min_sigma + min_edge - kSqrt2;
  if (min_sigma > kInvSqrt2 && corner_l < 0.0)
    throw std::invalid_argument(
        "zetap_zero_compare: region meets the excluded triangle sigma > 1/sqrt2, "
        "|sigma|+|tau| < sqrt2 where the approximation breaks down");
  require(min_sigma > kInvSqrt2 && corner_l > 0.0,
          "zetap_zero_compare: region must sit compactly inside the zeta half of B2");

  ZetaCompareSummary s;
  // REM side
  for (int r = 0; r < replicas; ++r) {
    RemConfig c = cfg;
    const SampleBatch b = gaussian_pairs(c, stream_index(r, Purpose::Batch));
    ZeroSet zs = zeros_in_window(b, cfg.n, region);
    std::vector<cplx> pts;
    for (const Zero& z : zs.zeros)
      if (region.contains(z.z)) pts.push_back(z.z);
    s.rem_counts.push_back(static_cast<int>(pts.size()));
    for (double d : nn_distances(pts)) s.rem_gaps.push_back(d);
  }
  // zeta side: zeros of zeta_P(beta/sqrt2) for beta in region
  const cplx zc = region.center() / kSqrt2;
  const double zr = 0.65 * region.diameter() / kSqrt2 + 0.02;
  const double T = zetap_choose_horizon(cplx(region.x0 / kSqrt2, 0.0), 0.05);
  for (int r = 0; r < replicas; ++r) {
    const ZetaPSample zp = zetap_sample(T, cfg.seed, stream_index(r, Purpose::Zeta));
    const ZetaLocalModel model = zetap_local_model(zp, zc, zr, true);
    AnalyticHandle h;
    h.eval = [&model](cplx z) { return model.eval(z / kSqrt2); };
    h.deriv = [&model](cplx z) { return model.deriv(z / kSqrt2) / kSqrt2; };
    h.domain = region;
    ZeroSet zs = locate_zeros(h, region);
    std::vector<cplx> pts;
    for (const Zero& z : zs.zeros)
      if (region.contains(z.z)) pts.push_back(z.z);
    s.zeta_counts.push_back(static_cast<int>(pts.size()));
    for (double d : nn_distances(pts)) s.zeta_gaps.push_back(d);
  }

  std::vector<double> a(s.rem_counts.begin(), s.rem_counts.end());
  std::vector<double> b(s.zeta_counts.begin(), s.zeta_counts.end());
  s.ks_counts_p = ks_two_sample(a, b).p_value;
  if (s.rem_gaps.size() >= 5 && s.zeta_gaps.size() >= 5)
    s.ks_gaps_p = ks_two_sample(s.rem_gaps, s.zeta_gaps).p_value;
  return s;
}

void write_zeroset_csv(const ZeroSet& zs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_zeroset_csv: cannot open " + path);
  out << "re,im,multiplicity,residual\n";
  char buf[128];
  for (const Zero& z : zs.zeros) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d,%.17g\n", z.z.real(), z.z.imag(),
                  z.multiplicity, z.residual);
    out << buf;
  }
}

}  // namespace remlab
