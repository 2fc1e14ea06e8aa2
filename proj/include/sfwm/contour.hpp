#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "sfwm/dispersion.hpp"
#include "sfwm/parallel.hpp"
#include "sfwm/phasematch.hpp"

namespace sfwm {

struct Point2 {
  double x = 0, y = 0;
};

struct Polyline {
  std::vector<Point2> points;
  bool closed = false;
};

/// Values sampled on x_i (columns) by y_j (rows), stored row-major.
struct ScalarGrid {
  std::vector<double> x, y;
  std::vector<double> v;
  double at(std::size_t i, std::size_t j) const { return v[j * x.size() + i]; }
};

namespace detail {

inline int sign_class(double v, double fallback) {
  if (v > 0) return 1;
  if (v < 0) return 0;
  return fallback > 0 ? 1 : 0;
}

}  // namespace detail

/// Zero-level polylines of a sampled field by marching squares. Crossings sit
/// on cell edges at the linear interpolation point, or, when `refine` is
/// given, at the root of refine(x, y) along the edge. Exact zeros at grid
/// nodes take the sign of their cell so that double roots (tangential zeros)
/// do not produce spurious loops. Saddle cells are split by the centre mean.
inline std::vector<Polyline> marching_squares(const ScalarGrid& g, double level = 0.0,
                                              const std::function<double(double, double)>& refine = {}) {
  const std::size_t nx = g.x.size(), ny = g.y.size();
  std::vector<Polyline> out;
  if (nx < 2 || ny < 2) return out;
  auto val = [&](std::size_t i, std::size_t j) { return g.at(i, j) - level; };

  const std::size_t n_h = (nx - 1) * ny;
  const std::size_t n_edges = n_h + nx * (ny - 1);
  auto h_edge = [&](std::size_t i, std::size_t j) { return j * (nx - 1) + i; };
  auto v_edge = [&](std::size_t i, std::size_t j) { return n_h + j * nx + i; };

  std::vector<std::int64_t> point_of(n_edges, -1);
  std::vector<Point2> pts;

  auto crossing = [&](std::size_t e, double xa, double ya, double va, double xb, double yb, double vb) {
    if (point_of[e] >= 0) return point_of[e];
    double t = (va == vb) ? 0.5 : va / (va - vb);
    t = std::clamp(t, 0.0, 1.0);
    if (refine && va != 0 && vb != 0 && std::signbit(va) != std::signbit(vb)) {
      auto f = [&](double s) { return refine(xa + s * (xb - xa), ya + s * (yb - ya)) - level; };
      try {
        std::uintmax_t it = 40;
        const auto r = boost::math::tools::toms748_solve(f, 0.0, 1.0, va, vb,
                                                         boost::math::tools::eps_tolerance<double>(40), it);
        t = 0.5 * (r.first + r.second);
      } catch (const std::exception&) {
        // keep the interpolated position
      }
    }
    pts.push_back({xa + t * (xb - xa), ya + t * (yb - ya)});
    point_of[e] = static_cast<std::int64_t>(pts.size() - 1);
    return point_of[e];
  };

  std::vector<std::pair<std::int64_t, std::int64_t>> segs;
  for (std::size_t j = 0; j + 1 < ny; ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const double v0 = val(i, j), v1 = val(i + 1, j), v2 = val(i + 1, j + 1), v3 = val(i, j + 1);
      const double mean = 0.25 * (v0 + v1 + v2 + v3);
      const int s0 = detail::sign_class(v0, mean), s1 = detail::sign_class(v1, mean);
      const int s2 = detail::sign_class(v2, mean), s3 = detail::sign_class(v3, mean);
      const int code = s0 | (s1 << 1) | (s2 << 2) | (s3 << 3);
      if (code == 0 || code == 15) continue;
      const double x0 = g.x[i], x1 = g.x[i + 1], y0 = g.y[j], y1 = g.y[j + 1];
      // edges: 0 bottom (v0-v1), 1 right (v1-v2), 2 top (v3-v2), 3 left (v0-v3)
      auto edge_pt = [&](int e) {
        switch (e) {
          case 0: return crossing(h_edge(i, j), x0, y0, v0, x1, y0, v1);
          case 1: return crossing(v_edge(i + 1, j), x1, y0, v1, x1, y1, v2);
          case 2: return crossing(h_edge(i, j + 1), x0, y1, v3, x1, y1, v2);
          default: return crossing(v_edge(i, j), x0, y0, v0, x0, y1, v3);
        }
      };
      auto seg = [&](int a, int b) { segs.emplace_back(edge_pt(a), edge_pt(b)); };
      switch (code) {
        case 1: case 14: seg(3, 0); break;
        case 2: case 13: seg(0, 1); break;
        case 3: case 12: seg(3, 1); break;
        case 4: case 11: seg(1, 2); break;
        case 6: case 9: seg(0, 2); break;
        case 7: case 8: seg(3, 2); break;
        case 5:
          if (mean > 0) { seg(3, 2); seg(0, 1); } else { seg(3, 0); seg(1, 2); }
          break;
        case 10:
          if (mean > 0) { seg(3, 0); seg(1, 2); } else { seg(0, 1); seg(3, 2); }
          break;
        default: break;
      }
    }
  }

  // stitch segments sharing crossing points into polylines
  const std::size_t np = pts.size();
  std::vector<std::array<std::int64_t, 2>> adj(np, {-1, -1});
  for (std::size_t s = 0; s < segs.size(); ++s) {
    for (auto p : {segs[s].first, segs[s].second}) {
      auto& a = adj[static_cast<std::size_t>(p)];
      (a[0] < 0 ? a[0] : a[1]) = static_cast<std::int64_t>(s);
    }
  }
  std::vector<char> used(segs.size(), 0);
  auto other = [&](std::size_t s, std::int64_t p) { return segs[s].first == p ? segs[s].second : segs[s].first; };
  auto walk = [&](std::int64_t start, bool closed_hint) {
    Polyline line;
    line.points.push_back(pts[static_cast<std::size_t>(start)]);
    std::int64_t p = start;
    for (;;) {
      const auto& a = adj[static_cast<std::size_t>(p)];
      std::int64_t next_seg = -1;
      for (auto s : a) {
        if (s >= 0 && !used[static_cast<std::size_t>(s)]) { next_seg = s; break; }
      }
      if (next_seg < 0) break;
      used[static_cast<std::size_t>(next_seg)] = 1;
      p = other(static_cast<std::size_t>(next_seg), p);
      line.points.push_back(pts[static_cast<std::size_t>(p)]);
      if (p == start) { line.closed = true; break; }
    }
    (void)closed_hint;
    return line;
  };
  for (std::size_t p = 0; p < np; ++p) {
    const auto& a = adj[p];
    const bool end = (a[0] >= 0) != (a[1] >= 0);
    if (end && !used[static_cast<std::size_t>(a[0] >= 0 ? a[0] : a[1])]) out.push_back(walk(std::int64_t(p), false));
  }
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (!used[s]) out.push_back(walk(segs[s].first, true));
  }
  return out;
}

enum class BranchLabel { trivial, non_trivial, power_split };

inline const char* to_string(BranchLabel b) {
  switch (b) {
    case BranchLabel::trivial: return "trivial";
    case BranchLabel::non_trivial: return "non_trivial";
    default: return "power_split";
  }
}

struct ContourBranch {
  BranchLabel label = BranchLabel::non_trivial;
  Polyline line;  // x = omega_s, y = omega_i (rad/s)
};

/// Rectangle in (omega_s, omega_i) with its sampling.
struct ContourRegion {
  double ws_min = 0, ws_max = 0, wi_min = 0, wi_max = 0;
  std::size_t nx = 800, ny = 800;
};

struct PhasematchContour {
  ContourRegion region;
  PumpConfig pump;
  std::vector<ContourBranch> branches;
  /// Vertex acceptance bound: 1e-3 times the median delta-k spread of the
  /// cells the contour passes through.
  double tolerance = 0;
};

struct ContourOptions {
  bool refine_vertices = true;
  double trivial_band_cells = 3.0;
  double tolerance_factor = 1e-3;
};

namespace detail {

inline ScalarGrid sample_delta_k(const ContourRegion& reg, const PumpConfig& pump0, const DispersionProfile& profile) {
  if (reg.nx < 2 || reg.ny < 2) throw ConfigError("contour: grid needs at least 2x2 points");
  if (!(reg.ws_max > reg.ws_min) || !(reg.wi_max > reg.wi_min)) {
    throw DomainError("contour: empty frequency region");
  }
  ScalarGrid g;
  g.x.resize(reg.nx);
  g.y.resize(reg.ny);
  for (std::size_t i = 0; i < reg.nx; ++i) g.x[i] = reg.ws_min + (reg.ws_max - reg.ws_min) * double(i) / double(reg.nx - 1);
  for (std::size_t j = 0; j < reg.ny; ++j) g.y[j] = reg.wi_min + (reg.wi_max - reg.wi_min) * double(j) / double(reg.ny - 1);
  g.v.resize(reg.nx * reg.ny);
  parallel_for(reg.ny, [&](std::size_t j) {
    for (std::size_t i = 0; i < reg.nx; ++i) g.v[j * reg.nx + i] = delta_k_cw(g.x[i], g.y[j], pump0, profile);
  });
  return g;
}

inline double trivial_distance(const Point2& p, const PumpConfig& pump) {
  const double d = pump.omega1 - pump.omega2;
  const double a = std::abs(p.y - p.x + d), b = std::abs(p.y - p.x - d);
  return std::min(a, b) / std::sqrt(2.0);
}

inline double median_cell_spread(const ScalarGrid& g, double level) {
  std::vector<double> spread;
  const std::size_t nx = g.x.size(), ny = g.y.size();
  for (std::size_t j = 0; j + 1 < ny; ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const double c[4] = {g.at(i, j) - level, g.at(i + 1, j) - level, g.at(i + 1, j + 1) - level, g.at(i, j + 1) - level};
      const auto [lo, hi] = std::minmax_element(c, c + 4);
      if (*lo < 0 && *hi > 0) spread.push_back(*hi - *lo);
    }
  }
  if (spread.empty()) return 0;
  std::nth_element(spread.begin(), spread.begin() + spread.size() / 2, spread.end());
  return spread[spread.size() / 2];
}

}  // namespace detail

/// Perfect-phasematching contours delta_k_cw = 0 over a rectangle. At zero
/// power the trivial lines omega_i = omega_s -+ (omega1 - omega2) are always
/// included; for degenerate pumps they are double roots and are added
/// analytically. Polylines within `trivial_band_cells` cells of those lines
/// are labelled trivial at zero power and joined into one branch per line.
/// Above zero power every vertex takes
/// the label of the nearer zero-power branch (power_split for the trivial
/// lines) and polylines are cut where the label changes.
inline PhasematchContour trace_contours(const ContourRegion& reg, const PumpConfig& pump,
                                        const DispersionProfile& profile, const ContourOptions& opt = {}) {
  pump.validate();
  profile.require(reg.ws_min, "contour region");
  profile.require(reg.ws_max, "contour region");
  profile.require(reg.wi_min, "contour region");
  profile.require(reg.wi_max, "contour region");
  const PumpConfig pump0 = pump.with_power(0, 0);
  const ScalarGrid g = detail::sample_delta_k(reg, pump0, profile);
  const double level = pump.nonlinear_shift();

  std::function<double(double, double)> refine;
  if (opt.refine_vertices) refine = [&](double x, double y) { return delta_k_cw(x, y, pump0, profile); };
  auto lines = marching_squares(g, level, refine);

  PhasematchContour c;
  c.region = reg;
  c.pump = pump;
  c.tolerance = opt.tolerance_factor * detail::median_cell_spread(g, level);
  const double cell = std::max((reg.ws_max - reg.ws_min) / double(reg.nx - 1), (reg.wi_max - reg.wi_min) / double(reg.ny - 1));
  const double band = opt.trivial_band_cells * cell;
  auto is_trivial_line = [&](const Polyline& l) {
    std::size_t near = 0;
    for (const auto& p : l.points) near += detail::trivial_distance(p, pump) <= band ? 1 : 0;
    return 2 * near >= l.points.size();
  };
  if (level == 0) {
    // fragments of one trivial line (cut where other branches cross it) are joined
    const double d = pump.omega1 - pump.omega2;
    std::vector<Point2> trivial_on[2];
    for (auto& l : lines) {
      if (!is_trivial_line(l)) {
        c.branches.push_back({BranchLabel::non_trivial, std::move(l)});
        continue;
      }
      if (pump.is_degenerate()) continue;  // replaced by the analytic diagonal below
      double side = 0;
      for (const auto& q : l.points) side += (q.y - q.x) * d;
      auto& dst = trivial_on[side < 0 ? 0 : 1];
      dst.insert(dst.end(), l.points.begin(), l.points.end());
    }
    for (auto& pts : trivial_on) {
      if (pts.empty()) continue;
      std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) { return a.x + a.y < b.x + b.y; });
      Polyline joined;
      for (const auto& q : pts) {
        if (joined.points.empty() || std::hypot(q.x - joined.points.back().x, q.y - joined.points.back().y) > 1e-9 * cell) {
          joined.points.push_back(q);
        }
      }
      c.branches.push_back({BranchLabel::trivial, std::move(joined)});
    }
  } else {
    // each vertex inherits the label of the nearer zero-power branch
    std::vector<Point2> base;
    for (const auto& l : marching_squares(g, 0.0, {})) {
      if (!is_trivial_line(l)) base.insert(base.end(), l.points.begin(), l.points.end());
    }
    auto nearest_base = [&](const Point2& p) {
      double d = std::numeric_limits<double>::infinity();
      for (const auto& q : base) d = std::min(d, std::hypot(p.x - q.x, p.y - q.y));
      return d;
    };
    for (auto& l : lines) {
      std::vector<BranchLabel> lab(l.points.size());
      for (std::size_t k = 0; k < l.points.size(); ++k) {
        const bool split = detail::trivial_distance(l.points[k], pump) < nearest_base(l.points[k]);
        lab[k] = split ? BranchLabel::power_split : BranchLabel::non_trivial;
      }
      bool uniform = true;
      for (const auto b : lab) uniform = uniform && b == lab.front();
      if (uniform) {
        c.branches.push_back({lab.empty() ? BranchLabel::non_trivial : lab.front(), std::move(l)});
        continue;
      }
      std::size_t start = 0;
      for (std::size_t k = 1; k <= lab.size(); ++k) {
        if (k < lab.size() && lab[k] == lab[start]) continue;
        Polyline part;
        // share the boundary vertex so the pieces stay connected
        const std::size_t end = std::min(k + 1, lab.size());
        part.points.assign(l.points.begin() + long(start), l.points.begin() + long(end));
        c.branches.push_back({lab[start], std::move(part)});
        start = k;
      }
    }
  }

  if (level == 0 && pump.is_degenerate()) {
    // omega_i = omega_s clipped to the region
    const double lo = std::max(reg.ws_min, reg.wi_min), hi = std::min(reg.ws_max, reg.wi_max);
    if (hi > lo) {
      Polyline diag;
      const std::size_t n = std::max(reg.nx, reg.ny);
      for (std::size_t k = 0; k < n; ++k) {
        const double w = lo + (hi - lo) * double(k) / double(n - 1);
        diag.points.push_back({w, w});
      }
      c.branches.push_back({BranchLabel::trivial, std::move(diag)});
    }
  }
  return c;
}

}  // namespace sfwm
