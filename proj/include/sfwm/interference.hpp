#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "sfwm/dispersion.hpp"
#include "sfwm/parallel.hpp"
#include "sfwm/phasematch.hpp"
#include "sfwm/twophoton.hpp"

namespace sfwm {

/// Three flat pump bands NDP1, DP, NDP2 with amplitudes 1 : sqrt(2) e^{i theta} : 1.
struct MultiLinePumpSpec {
  double omega_ndp1 = 0, omega_dp = 0, omega_ndp2 = 0;
  double band_width = 0;  ///< rad/s, common to all three bands
  double theta = 0;
  double total_power_w = 5.0;
  double gamma = kDefaultGamma;

  static MultiLinePumpSpec from_wavelengths(double l1_um, double ldp_um, double l2_um, double width_nm, double theta,
                                            double power_w = 5.0, double gamma = kDefaultGamma) {
    MultiLinePumpSpec s;
    s.omega_ndp1 = omega_from_um(l1_um);
    s.omega_dp = omega_from_um(ldp_um);
    s.omega_ndp2 = omega_from_um(l2_um);
    s.band_width = omega_width_from_nm(ldp_um, width_nm);
    s.theta = theta;
    s.total_power_w = power_w;
    s.gamma = gamma;
    return s;
  }

  std::array<double, 3> centers() const { return {omega_ndp1, omega_dp, omega_ndp2}; }
  std::array<cplx, 3> amplitudes() const { return {cplx{1, 0}, std::sqrt(2.0) * std::polar(1.0, theta), cplx{1, 0}}; }

  SpectralEnvelope envelope() const {
    const auto c = centers();
    const auto a = amplitudes();
    std::vector<RectBand> b;
    for (int k = 0; k < 3; ++k) b.push_back({c[k], band_width, a[k]});
    return SpectralEnvelope::bands(std::move(b));
  }

  /// Both pump fields are the same multi-line field, so the phase-modulation
  /// shift counts the total power once per field.
  double nonlinear_shift() const { return 2.0 * gamma * total_power_w; }

  void validate() const {
    if (!(omega_ndp1 > 0 && omega_dp > 0 && omega_ndp2 > 0)) throw ConfigError("multiline: band centres must be > 0");
    if (!(band_width > 0)) throw ConfigError("multiline: band width must be > 0");
    if (std::abs(omega_ndp1 + omega_ndp2 - 2 * omega_dp) > 1e-9 * omega_dp) {
      throw ConfigError("multiline: NDP centres must be symmetric about the DP centre");
    }
    const auto c = centers();
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        if (std::abs(c[a] - c[b]) <= band_width) throw ConfigError("multiline: pump bands overlap");
      }
    }
  }
};

/// Joint amplitude on an explicit grid by quadrature of the general integral.
inline JointSpectrum jsa_multiline(const MultiLinePumpSpec& spec, const std::vector<double>& ws,
                                   const std::vector<double>& wi, const DispersionProfile& profile, double length_m,
                                   const QuadratureOptions& q = {}) {
  spec.validate();
  const auto env = spec.envelope();
  PumpConfig pump = PumpConfig::pair(spec.omega_dp, spec.omega_dp, spec.total_power_w, spec.gamma);
  return jsa_general(ws, wi, env, env, pump, profile, length_m, q);
}

struct FluxOptions {
  std::size_t signal_points = 512;
  std::size_t sum_points = 48;
  /// Signal window: +- this many main-mode FWHMs around the DP frequency.
  double signal_window_fwhm = 1.5;
  /// Sum-frequency window: +- this many band widths around 2 omega_DP.
  double sum_window_bands = 1.5;
  std::size_t singles_points = (1u << 15) + 1;
  QuadratureOptions quadrature{};
};

/// Band-pair decomposition of the joint amplitude over the region of
/// interest: F = sum_ab A_a A_b I_ab(omega_s, Sigma), Sigma = omega_s + omega_i.
struct MultiLineDecomposition {
  std::vector<double> omega_s;
  std::vector<double> sigma;
  double d_omega_s = 0, d_sigma = 0;
  double main_fwhm_rad_s = 0;
  /// I[a][b] flattened as [s * sigma.size() + t]; empty when (a, b) cannot
  /// reach the sum window.
  std::array<std::array<std::vector<cplx>, 3>, 3> parts;
};

inline MultiLineDecomposition decompose_multiline(const MultiLinePumpSpec& spec, const DispersionProfile& profile,
                                                  double length_m, const FluxOptions& opt = {}) {
  spec.validate();
  if (opt.quadrature.points_per_band < 8) {
    throw ResolutionError("multiline: fewer than 8 quadrature points per band");
  }
  const auto centers = spec.centers();
  for (double c : centers) {
    profile.require(c - 0.5 * spec.band_width, "pump band edge");
    profile.require(c + 0.5 * spec.band_width, "pump band edge");
  }
  const double shift = spec.nonlinear_shift();

  // main emission mode of the monochromatic DP configuration
  const auto dp = PumpConfig::pair(spec.omega_dp, spec.omega_dp, spec.total_power_w, spec.gamma);
  const auto singles = singles_spectrum(singles_grid(dp, profile, opt.singles_points), dp, profile, length_m);
  const auto report = bandwidth_report(singles);

  MultiLineDecomposition d;
  d.main_fwhm_rad_s = report.main_fwhm_rad_s;
  const double half_s = opt.signal_window_fwhm * report.main_fwhm_rad_s;
  const double s_lo = std::max(spec.omega_dp - half_s, profile.omega_min());
  const double s_hi = std::min(spec.omega_dp + half_s, profile.omega_max());
  const double half_sum = opt.sum_window_bands * spec.band_width;
  // midpoint grids
  d.d_omega_s = (s_hi - s_lo) / double(opt.signal_points);
  d.d_sigma = 2 * half_sum / double(opt.sum_points);
  for (std::size_t k = 0; k < opt.signal_points; ++k) d.omega_s.push_back(s_lo + (double(k) + 0.5) * d.d_omega_s);
  for (std::size_t k = 0; k < opt.sum_points; ++k) d.sigma.push_back(2 * spec.omega_dp - half_sum + (double(k) + 0.5) * d.d_sigma);

  const double h = spec.band_width / double(opt.quadrature.points_per_band);
  const double sig_lo = d.sigma.front() - 0.5 * d.d_sigma, sig_hi = d.sigma.back() + 0.5 * d.d_sigma;
  const std::size_t ns = d.omega_s.size(), nt = d.sigma.size();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const double c = centers[a] + centers[b];
      if (c + spec.band_width <= sig_lo || c - spec.band_width >= sig_hi) continue;
      auto& part = d.parts[a][b];
      part.assign(ns * nt, cplx{0, 0});
      parallel_for(ns, [&](std::size_t s) {
        const double ws = d.omega_s[s];
        const double ks = profile.k(ws);
        for (std::size_t t = 0; t < nt; ++t) {
          const double sum = d.sigma[t];
          const double wi = sum - ws;
          if (!profile.contains(wi)) continue;
          const double ki = profile.k(wi);
          const double lo = std::max(centers[a] - 0.5 * spec.band_width, sum - centers[b] - 0.5 * spec.band_width);
          const double hi = std::min(centers[a] + 0.5 * spec.band_width, sum - centers[b] + 0.5 * spec.band_width);
          if (!(hi > lo)) continue;
          const std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / h)));
          const double step = (hi - lo) / double(n);
          cplx acc{0, 0};
          for (std::size_t q = 0; q < n; ++q) {
            const double w = lo + (double(q) + 0.5) * step;
            const double phi = 0.5 * length_m * (profile.k(w) + profile.k(sum - w) - ks - ki - shift);
            acc += sinc(phi) * std::polar(1.0, phi);
          }
          part[s * nt + t] = acc * step;
        }
      });
    }
  }
  return d;
}

/// Which band pairs contribute: all, only DP x DP, or only NDP1 x NDP2 (both orders).
enum class PathwaySelection { all, dp_only, ndp_only };

/// F(omega_s, Sigma) for a phase theta, flattened as in MultiLineDecomposition.
inline std::vector<cplx> multiline_amplitude(const MultiLineDecomposition& d, double theta,
                                             PathwaySelection sel = PathwaySelection::all) {
  const std::array<cplx, 3> amp = {cplx{1, 0}, std::sqrt(2.0) * std::polar(1.0, theta), cplx{1, 0}};
  const std::size_t n = d.omega_s.size() * d.sigma.size();
  std::vector<cplx> f(n, cplx{0, 0});
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (d.parts[a][b].empty()) continue;
      const bool is_dp = a == 1 && b == 1;
      const bool is_ndp = (a == 0 && b == 2) || (a == 2 && b == 0);
      if (sel == PathwaySelection::dp_only && !is_dp) continue;
      if (sel == PathwaySelection::ndp_only && !is_ndp) continue;
      const cplx w = amp[a] * amp[b];
      for (std::size_t k = 0; k < n; ++k) f[k] += w * d.parts[a][b][k];
    }
  }
  return f;
}

inline double integrated_flux(const MultiLineDecomposition& d, const std::vector<cplx>& f) {
  double acc = 0;
  for (const auto& v : f) acc += std::norm(v);
  return acc * d.d_omega_s * d.d_sigma;
}

/// Singles spectrum over omega_s for one phase: integral of |F|^2 over Sigma.
inline std::vector<double> multiline_singles(const MultiLineDecomposition& d, const std::vector<cplx>& f) {
  const std::size_t nt = d.sigma.size();
  std::vector<double> s(d.omega_s.size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t t = 0; t < nt; ++t) s[i] += std::norm(f[i * nt + t]);
    s[i] *= d.d_sigma;
  }
  return s;
}

struct FluxRow {
  double theta = 0;
  double flux = 0;
  double flux_norm = 0;
};

struct FluxTable {
  std::vector<FluxRow> rows;
  double signal_window_lo = 0, signal_window_hi = 0;
  double sum_window_lo = 0, sum_window_hi = 0;
  /// Fraction of the theta = 0 flux in the window carried by pairs drawn
  /// from a single NDP band, and by mixed DP/NDP pairs.
  double same_band_fraction = 0;
  double mixed_band_fraction = 0;
};

inline FluxTable flux_vs_phase(const MultiLinePumpSpec& spec, const std::vector<double>& thetas,
                               const DispersionProfile& profile, double length_m, const FluxOptions& opt = {}) {
  if (thetas.empty()) throw ConfigError("flux_vs_phase: empty phase grid");
  const auto d = decompose_multiline(spec, profile, length_m, opt);
  FluxTable t;
  t.signal_window_lo = d.omega_s.front() - 0.5 * d.d_omega_s;
  t.signal_window_hi = d.omega_s.back() + 0.5 * d.d_omega_s;
  t.sum_window_lo = d.sigma.front() - 0.5 * d.d_sigma;
  t.sum_window_hi = d.sigma.back() + 0.5 * d.d_sigma;
  const double f0 = integrated_flux(d, multiline_amplitude(d, 0.0));
  if (!(f0 > 0)) throw NumericError("flux_vs_phase: no emission in the region of interest at theta = 0");
  for (double th : thetas) {
    const double f = integrated_flux(d, multiline_amplitude(d, th));
    t.rows.push_back({th, f, f / f0});
  }
  auto part_flux = [&](int a, int b) {
    if (d.parts[a][b].empty()) return 0.0;
    double acc = 0;
    for (const auto& v : d.parts[a][b]) acc += std::norm(v);
    return acc * d.d_omega_s * d.d_sigma;
  };
  t.same_band_fraction = (part_flux(0, 0) + part_flux(2, 2)) / f0;
  t.mixed_band_fraction = 2 * (part_flux(0, 1) + part_flux(1, 0) + part_flux(1, 2) + part_flux(2, 1)) / f0;
  return t;
}

}  // namespace sfwm
