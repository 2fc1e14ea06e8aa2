#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "sfwm/dispersion.hpp"
#include "sfwm/parallel.hpp"
#include "sfwm/phasematch.hpp"
#include "sfwm/twophoton.hpp"

namespace sfwm {

// --------------------------------------------------------- k4 = 0 radius

struct RadiusSearchOptions {
  double tolerance_um = 1e-4;
  DispersionOptions dispersion{};
};

/// k^(4) at the fibre's own (highest-frequency) zero-dispersion point.
inline double k4_at_zero_dispersion(double radius_um, double fill, const DispersionOptions& dopt = {},
                                    const SellmeierModel& model = SellmeierModel::fused_silica()) {
  DispersionProfile p(model, {radius_um, fill, 1.0}, dopt);
  const auto wz = p.zero_dispersion_frequency();
  if (!wz) {
    std::ostringstream os;
    os << "no zero-dispersion frequency at r=" << radius_um << " um, f=" << fill;
    throw DesignError(os.str());
  }
  return p.k_derivative(*wz, 4);
}

/// Core radius at which k^(4)(omega_zd) changes sign, by bisection.
inline double find_k4_zero_radius(double fill, double r_lo, double r_hi, const RadiusSearchOptions& opt = {},
                                  const SellmeierModel& model = SellmeierModel::fused_silica()) {
  if (!(r_hi > r_lo && r_lo > 0)) throw ConfigError("find_k4_zero_radius: bracket must satisfy 0 < r_lo < r_hi");
  double flo = k4_at_zero_dispersion(r_lo, fill, opt.dispersion, model);
  const double fhi = k4_at_zero_dispersion(r_hi, fill, opt.dispersion, model);
  if (std::signbit(flo) == std::signbit(fhi)) {
    std::ostringstream os;
    os << "find_k4_zero_radius: k4 has the same sign at r=" << r_lo << " and r=" << r_hi << " um (f=" << fill << ")";
    throw DesignError(os.str());
  }
  while (r_hi - r_lo > opt.tolerance_um) {
    const double m = 0.5 * (r_lo + r_hi);
    const double fm = k4_at_zero_dispersion(m, fill, opt.dispersion, model);
    if (std::signbit(fm) == std::signbit(flo)) {
      r_lo = m;
      flo = fm;
    } else {
      r_hi = m;
    }
  }
  return 0.5 * (r_lo + r_hi);
}

// ------------------------------------------------------------- NDP pumps

struct NdpPair {
  double omega1 = 0, omega2 = 0;  ///< omega1 > omega_zd > omega2
  double residual = 0;            ///< k(w1) + k(w2) - 2 k(w_zd) - shift, 1/m
};

struct FrequencyInterval {
  double lo = 0, hi = 0;
};

struct PumpSolutionSet {
  double omega_zd = 0;
  std::vector<NdpPair> pairs;
  /// omega1 range of the continuum (its partners are 2 omega_zd - omega1).
  std::optional<FrequencyInterval> continuum;
  bool window_clipped = false;
};

struct NdpSearchOptions {
  std::size_t scan_points = 2000;
  /// Continuum membership: pairs whose degenerate phasematching point can be
  /// restored by detuning the pair by at most this much (rad/s).
  double continuum_tolerance = kTwoPi * 0.9e9;
  /// omega1 search range; zeros select the widest range the window allows.
  double omega1_min = 0, omega1_max = 0;
};

/// Frequency by which the pair must be detuned from symmetry so that the
/// degenerate signal/idler point shifted by the same amount phasematches:
/// R / (2 (k'(w2) - k'(w_zd))).
inline double continuum_offset(double w1, double omega_zd, double shift, const DispersionProfile& p) {
  const double w2 = 2 * omega_zd - w1;
  const double r = p.k(w1) + p.k(w2) - 2 * p.k(omega_zd) - shift;
  const double d = 2 * (p.k_derivative_cached(w2, 1) - p.k_derivative_cached(omega_zd, 1));
  if (d == 0) return r == 0 ? 0 : std::numeric_limits<double>::infinity();
  return std::abs(r / d);
}

inline PumpSolutionSet find_ndp_pairs(const DispersionProfile& p, double shift, const NdpSearchOptions& opt = {},
                                      std::optional<double> omega_zd = std::nullopt) {
  PumpSolutionSet out;
  out.omega_zd = omega_zd ? *omega_zd : p.require_zero_dispersion_frequency();
  const double wz = out.omega_zd;
  auto residual = [&](double w1) { return p.k(w1) + p.k(2 * wz - w1) - 2 * p.k(wz) - shift; };

  const double hi_limit = std::min(p.omega_max(), 2 * wz - p.omega_min());
  double lo = opt.omega1_min > 0 ? opt.omega1_min : wz;
  double hi = opt.omega1_max > 0 ? opt.omega1_max : hi_limit;
  if (lo < wz) { lo = wz; out.window_clipped = true; }
  if (hi > hi_limit) { hi = hi_limit; out.window_clipped = true; }
  if (!(hi > lo)) throw DomainError("find_ndp_pairs: empty search window");

  const std::size_t n = std::max<std::size_t>(opt.scan_points, 16);
  std::vector<double> w(n + 1), r(n + 1), off(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    w[k] = lo + (hi - lo) * double(k) / double(n);
    r[k] = residual(w[k]);
    off[k] = k == 0 && lo == wz ? 0.0 : continuum_offset(w[k], wz, shift, p);
  }

  // continuum: the run of in-tolerance samples that starts at omega_zd
  std::size_t cont_end = 0;
  bool has_cont = lo == wz && off[0] <= opt.continuum_tolerance;
  if (has_cont) {
    while (cont_end < n && off[cont_end + 1] <= opt.continuum_tolerance) ++cont_end;
    if (cont_end == 0) {
      has_cont = false;
    } else {
      // refine the end of the run
      double a = w[cont_end], b = cont_end < n ? w[cont_end + 1] : w[cont_end];
      for (int it = 0; it < 60 && b > a; ++it) {
        const double m = 0.5 * (a + b);
        if (continuum_offset(m, wz, shift, p) <= opt.continuum_tolerance) a = m; else b = m;
      }
      out.continuum = FrequencyInterval{wz, a};
    }
  }

  const std::size_t start = has_cont ? cont_end + 1 : 1;
  for (std::size_t k = start; k <= n; ++k) {
    if (std::signbit(r[k - 1]) == std::signbit(r[k]) || r[k - 1] == 0) continue;
    if (k - 1 == 0 && lo == wz) continue;  // the trivial degenerate point itself
    std::uintmax_t it = 200;
    const auto root = boost::math::tools::toms748_solve(residual, w[k - 1], w[k], r[k - 1], r[k],
                                                        boost::math::tools::eps_tolerance<double>(50), it);
    const double w1 = 0.5 * (root.first + root.second);
    out.pairs.push_back({w1, 2 * wz - w1, residual(w1)});
  }
  return out;
}

// ------------------------------------------------------ design conditions

/// Curvature at the f = 0.5, r = 0.9023 um reference fibre (s/rad, Malitson
/// silica, vector HE11 model); condition iv passes below 5% of it.
inline constexpr double kReferenceCurvature = 4.4216e-17;

struct ConditionOptions {
  double length_m = 0.25;
  /// Condition i passes when |dk| < phasematch_fraction * 2 pi / L.
  double phasematch_fraction = 0.1;
  double energy_relative_tolerance = 1e-9;
  double slope_tolerance = 1e-3;
  double curvature_threshold = 0.05 * kReferenceCurvature;
  /// Probe offset in delta_minus, relative to the candidate frequency.
  double probe = 0.01;
};

struct DesignConditionsReport {
  double phasematch_residual = 0;  ///< i, 1/m
  double energy_residual = 0;      ///< ii, rad/s
  double slope = std::numeric_limits<double>::quiet_NaN();      ///< iii, d dplus / d dminus
  double curvature = std::numeric_limits<double>::quiet_NaN();  ///< iv, s/rad (numerical)
  std::optional<double> curvature_formula;  ///< |k4 / 12 k3| for degenerate pumps
  bool pass_i = false, pass_ii = false, pass_iii = false, pass_iv = false;
  bool all_pass() const { return pass_i && pass_ii && pass_iii && pass_iv; }
};

namespace detail {

inline long double delta_k_exact(long double ws, long double wi, const PumpConfig& pump, const DispersionProfile& p) {
  const long double sum = ws + wi;
  const long double d = (long double)pump.omega1 - (long double)pump.omega2;
  return (p.k_exact(0.5L * (sum + d)) + p.k_exact(0.5L * (sum - d))) - (p.k_exact(ws) + p.k_exact(wi)) -
         (long double)pump.nonlinear_shift();
}

/// Root in dplus of dk(so + (dp + dm)/2, si + (dp - dm)/2) nearest zero.
inline std::optional<double> plus_root(double so, double si, double dm, double span, const PumpConfig& pump,
                                       const DispersionProfile& p) {
  auto f = [&](double dp) {
    return (double)delta_k_exact(so + 0.5L * (dp + dm), si + 0.5L * (dp - dm), pump, p);
  };
  // expand a symmetric bracket until a sign change appears
  double h = span * 1e-4;
  const double f0 = f(0);
  if (f0 == 0) return 0.0;
  for (int k = 0; k < 40 && h <= span; ++k, h *= 2) {
    const double fp = f(h), fm = f(-h);
    double a, b, fa, fb;
    if (std::signbit(fp) != std::signbit(f0)) { a = 0; b = h; fa = f0; fb = fp; }
    else if (std::signbit(fm) != std::signbit(f0)) { a = -h; b = 0; fa = fm; fb = f0; }
    else continue;
    std::uintmax_t it = 200;
    const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(45), it);
    return 0.5 * (r.first + r.second);
  }
  return std::nullopt;
}

}  // namespace detail

/// Conditions i-iv at a candidate signal/idler pair. Slope and curvature
/// come from the contour roots at dminus = +-h, h = probe * omega.
inline DesignConditionsReport evaluate_conditions(double so, double si, const PumpConfig& pump,
                                                  const DispersionProfile& p, const ConditionOptions& opt = {}) {
  p.require(so, "candidate signal");
  p.require(si, "candidate idler");
  DesignConditionsReport r;
  r.phasematch_residual = (double)detail::delta_k_exact(so, si, pump, p);
  r.energy_residual = (so + si) - (pump.omega1 + pump.omega2);
  r.pass_i = std::abs(r.phasematch_residual) < opt.phasematch_fraction * kTwoPi / opt.length_m;
  r.pass_ii = std::abs(r.energy_residual) <= opt.energy_relative_tolerance * (pump.omega1 + pump.omega2);

  const double h = opt.probe * 0.5 * (so + si);
  const double span = 0.5 * (so + si) * 0.2;
  try {
    const auto up = detail::plus_root(so, si, h, span, pump, p);
    const auto dn = detail::plus_root(so, si, -h, span, pump, p);
    if (up && dn) {
      // at dminus = 0 the candidate is the root when condition i holds
      const double mid = r.pass_i ? 0.0 : detail::plus_root(so, si, 0.0, span, pump, p).value_or(0.0);
      r.slope = (*up - *dn) / (2 * h);
      r.curvature = std::abs(*up + *dn - 2 * mid) / (h * h);
      r.pass_iii = r.pass_i && std::abs(r.slope) < opt.slope_tolerance;
      r.pass_iv = r.pass_i && r.curvature <= opt.curvature_threshold;
    }
  } catch (const DomainError&) {
    // contour leaves the window near the candidate: iii/iv stay failed
  }
  if (pump.is_degenerate()) {
    const auto wz = p.zero_dispersion_frequency();
    if (wz && std::abs(*wz - pump.omega1) < 1e-9 * *wz) {
      r.curvature_formula = contour_curvature_at_origin(taylor_coefficients(pump, p, *wz));
    }
  }
  return r;
}

// -------------------------------------------------------- bandwidth sweep

struct SweepSettings {
  double power_w = 5.0;  ///< per pump
  double gamma = kDefaultGamma;
  double length_m = 0.25;
  std::size_t grid_points = (1u << 16) + 1;
  DispersionOptions dispersion{};
  BandwidthOptions bandwidth{};
};

struct SweepRow {
  double radius_um = 0;
  double fill = 0;
  std::optional<double> lambda_zd_um;
  std::optional<double> fwhm_main_nm;
  std::optional<double> bw_inner_sat_nm;
  std::optional<double> bw_outer_sat_nm;
  std::vector<std::string> flags;
};

inline SweepRow sweep_row(double r_um, double fill, const SweepSettings& s,
                          const SellmeierModel& model = SellmeierModel::fused_silica()) {
  SweepRow row;
  row.radius_um = r_um;
  row.fill = fill;
  try {
    DispersionProfile p(model, {r_um, fill, s.length_m}, s.dispersion);
    const auto wz = p.zero_dispersion_frequency();
    if (!wz) {
      row.flags.push_back("no_zd");
      return row;
    }
    row.lambda_zd_um = um_from_omega(*wz);
    const auto pump = PumpConfig::degenerate(*wz, s.power_w, s.gamma);
    const auto spec = singles_spectrum(singles_grid(pump, p, s.grid_points), pump, p, s.length_m);
    if (spec.intensity.front() >= s.bandwidth.void_level || spec.intensity.back() >= s.bandwidth.void_level) {
      row.flags.push_back("window_edge");
    }
    const auto b = bandwidth_report(spec, s.bandwidth);
    row.fwhm_main_nm = b.main_fwhm_nm;
    row.bw_inner_sat_nm = b.inner_satellite_bandwidth_nm;
    row.bw_outer_sat_nm = b.outer_satellite_bandwidth_nm;
    if (b.voids) row.flags.push_back("voids");
    if (b.satellites_truncated) row.flags.push_back("satellite_truncated");
  } catch (const TruncatedSpectrumError&) {
    row.flags.push_back("window_edge");
    row.flags.push_back("main_truncated");
  } catch (const Error& e) {
    row.flags.push_back(std::string("error:") + e.what());
  }
  return row;
}

/// One DP singles spectrum per radius; rows come back in input order.
inline std::vector<SweepRow> bandwidth_sweep(double fill, const std::vector<double>& radii_um, const SweepSettings& s,
                                             const SellmeierModel& model = SellmeierModel::fused_silica()) {
  std::vector<SweepRow> rows(radii_um.size());
  parallel_for(radii_um.size(), [&](std::size_t k) { rows[k] = sweep_row(radii_um[k], fill, s, model); });
  return rows;
}

// --------------------------------------------------- DP / NDP equivalence

/// max over the grid of |dk_sing^NDP - dk_sing^DP - dk0|; the DP pump sits at
/// the pair's midpoint and both carry `shift`.
inline double dp_ndp_symmetry_residual(const std::vector<double>& omega, double w1, double w2, double omega_zd,
                                       const DispersionProfile& p, double shift = 0) {
  if (std::abs(w1 + w2 - 2 * omega_zd) > 1e-12 * omega_zd) {
    throw ContractError("dp_ndp_symmetry_residual: pair is not symmetric about omega_zd");
  }
  PumpConfig ndp = PumpConfig::pair(w1, w2);
  PumpConfig dp = PumpConfig::degenerate(omega_zd);
  ndp.gamma1 = ndp.gamma2 = dp.gamma1 = dp.gamma2 = 1.0;
  ndp.power1_w = ndp.power2_w = dp.power1_w = dp.power2_w = 0.5 * shift;
  const double dk0 = p.k(w1) + p.k(w2) - 2 * p.k(omega_zd);
  double worst = 0;
  for (double w : omega) {
    worst = std::max(worst, std::abs(delta_k_sing(w, ndp, p) - delta_k_sing(w, dp, p) - dk0));
  }
  return worst;
}

}  // namespace sfwm
