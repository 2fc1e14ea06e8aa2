#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "sfwm/contour.hpp"
#include "sfwm/design.hpp"
#include "sfwm/interference.hpp"
#include "sfwm/io/config.hpp"
#include "sfwm/io/csv.hpp"
#include "sfwm/parallel.hpp"
#include "sfwm/twophoton.hpp"

namespace sfwm::cli {

using io::CsvWriter;
using io::json;
using io::RunConfig;

inline constexpr const char* kVersion = "1.0.0";

struct OutputFile {
  std::string name;
  std::string content;
};

using Outputs = std::vector<OutputFile>;

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw NumericError("sha256 digest failed");
  }
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[md[k] >> 4];
    out += hex[md[k] & 15];
  }
  return out;
}

// ------------------------------------------------------------- helpers

struct Setup {
  DispersionProfile profile;
  PumpConfig pump;
  std::optional<double> omega_zd;
};

inline DispersionProfile make_profile(const RunConfig& c) { return DispersionProfile(c.sellmeier, c.fiber, c.dispersion); }

inline Setup make_setup(const RunConfig& c) {
  Setup s{make_profile(c), {}, std::nullopt};
  const auto& p = c.pump;
  const double gamma = p.gamma_per_w_km * 1e-3;
  double w1 = 0, w2 = 0;
  const bool need_zd = !p.lambda1_um || p.symmetric_partner;
  if (need_zd) s.omega_zd = s.profile.require_zero_dispersion_frequency();
  if (!p.lambda1_um) {
    w1 = w2 = *s.omega_zd;
  } else {
    w1 = omega_from_um(*p.lambda1_um);
    if (p.symmetric_partner) w2 = 2 * *s.omega_zd - w1;
    else w2 = p.lambda2_um ? omega_from_um(*p.lambda2_um) : w1;
  }
  s.pump = {w1, w2, kTwoPi * p.sigma_hz, p.power1_w, p.power2_w, gamma, gamma};
  s.pump.validate();
  s.profile.require(w1, "pump 1");
  s.profile.require(w2, "pump 2");
  return s;
}

inline BandwidthOptions bandwidth_options(const RunConfig& c) {
  return {c.tolerances.half_level, c.tolerances.void_level, c.tolerances.min_main_samples};
}

inline json pump_json(const PumpConfig& p) {
  return {{"omega1_rad_s", p.omega1},
          {"omega2_rad_s", p.omega2},
          {"lambda1_um", um_from_omega(p.omega1)},
          {"lambda2_um", um_from_omega(p.omega2)},
          {"power1_w", p.power1_w},
          {"power2_w", p.power2_w},
          {"gamma1_per_w_m", p.gamma1},
          {"gamma2_per_w_m", p.gamma2},
          {"sigma_rad_s", p.sigma},
          {"degenerate", p.is_degenerate()}};
}

/// Red-side Raman windows of 40 THz below each distinct pump line.
inline json raman_windows(const PumpConfig& p) {
  json out = json::array();
  std::vector<double> lines{p.omega1};
  if (!p.is_degenerate()) lines.push_back(p.omega2);
  for (double w : lines) {
    const double lo = w - kTwoPi * 40e12;
    out.push_back({{"pump_omega_rad_s", w},
                   {"omega_lo_rad_s", lo},
                   {"omega_hi_rad_s", w},
                   {"lambda_lo_um", um_from_omega(w)},
                   {"lambda_hi_um", lo > 0 ? json(um_from_omega(lo)) : json(nullptr)}});
  }
  return out;
}

inline json bandwidth_json(const BandwidthReport& b) {
  json sats = json::array();
  for (const auto& s : b.satellites) {
    sats.push_back({{"low_peak_um", um_from_omega(s.low_peak_omega)},
                    {"high_peak_um", um_from_omega(s.high_peak_omega)},
                    {"low_edge_omega_rad_s", s.low_edge_omega},
                    {"high_edge_omega_rad_s", s.high_edge_omega},
                    {"bandwidth_nm", s.bandwidth_nm},
                    {"bandwidth_rad_s", s.bandwidth_rad_s},
                    {"truncated", s.truncated}});
  }
  return {{"center_omega_rad_s", b.center_omega},
          {"center_lambda_um", um_from_omega(b.center_omega)},
          {"main_fwhm_nm", b.main_fwhm_nm},
          {"main_fwhm_rad_s", b.main_fwhm_rad_s},
          {"main_lambda_min_um", um_from_omega(b.main_high_omega)},
          {"main_lambda_max_um", um_from_omega(b.main_low_omega)},
          {"flat_bandwidth_nm", b.flat_bandwidth_nm},
          {"flat_bandwidth_rad_s", b.flat_bandwidth_rad_s},
          {"fractional_bandwidth", b.fractional_bandwidth},
          {"inner_satellite_bandwidth_nm", io::optional_number(b.inner_satellite_bandwidth_nm)},
          {"outer_satellite_bandwidth_nm", io::optional_number(b.outer_satellite_bandwidth_nm)},
          {"satellite_pairs", sats},
          {"voids", b.voids},
          {"satellites_truncated", b.satellites_truncated}};
}

inline std::string singles_csv(const SinglesSpectrum& s) {
  CsvWriter w({"omega_rad_s", "lambda_um", "intensity_norm", "amp_re", "amp_im"});
  for (std::size_t k = 0; k < s.omega.size(); ++k) {
    w.row({s.omega[k], um_from_omega(s.omega[k]), s.intensity[k], s.amplitude[k].real(), s.amplitude[k].imag()});
  }
  return w.str();
}

// ------------------------------------------------------------ commands

inline Outputs cmd_dispersion(const RunConfig& c) {
  const auto profile = make_profile(c);
  const double lmin = std::max(c.grids.dispersion_lambda_min_um, um_from_omega(profile.derivative_omega_max()));
  const double lmax = std::min(c.grids.dispersion_lambda_max_um, um_from_omega(profile.derivative_omega_min()));
  if (!(lmax > lmin)) throw DomainError("dispersion: empty wavelength window after clipping to the validity window");
  const auto lambdas = linspace(lmin, lmax, std::max<std::size_t>(c.grids.dispersion_points, 2));
  std::vector<std::array<double, 7>> ders(lambdas.size());
  std::vector<double> neff(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t k) {
    const double w = omega_from_um(lambdas[k]);
    neff[k] = static_cast<double>(profile.n_eff_exact(w));
    ders[k] = profile.k_derivatives(w);
  });
  CsvWriter csv({"omega_rad_s", "lambda_um", "n_eff", "k_per_m", "k2_s2_per_m", "k3_s3_per_m", "k4_s4_per_m"});
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    csv.row({omega_from_um(lambdas[k]), lambdas[k], neff[k], ders[k][0], ders[k][2], ders[k][3], ders[k][4]});
  }
  const auto roots = profile.zero_dispersion_frequencies();
  json zd;
  json all = json::array();
  for (double w : roots) all.push_back({{"omega_rad_s", w}, {"lambda_um", um_from_omega(w)}});
  if (roots.empty()) {
    zd = {{"omega_zd_rad_s", nullptr}, {"lambda_zd_um", nullptr}};
  } else {
    const double w = roots.back();
    const auto d = profile.k_derivatives(w);
    zd = {{"omega_zd_rad_s", w}, {"lambda_zd_um", um_from_omega(w)}, {"k3_s3_per_m", d[3]}, {"k4_s4_per_m", d[4]}};
  }
  zd["all_roots"] = all;
  zd["fill_in_model_range"] = c.fiber.in_model_range();
  return {{"dispersion.csv", csv.str()}, {"zd.json", io::dump_json(zd)}};
}

inline Outputs cmd_contour(const RunConfig& c) {
  const auto s = make_setup(c);
  const auto& g = c.grids;
  const double wc = 0.5 * (s.pump.omega1 + s.pump.omega2);
  auto bound = [&](const std::optional<double>& l, double fallback) { return l ? omega_from_um(*l) : fallback; };
  const double wlo = std::max(wc * (1 - g.contour_half_width), s.profile.omega_min());
  const double whi = std::min(wc * (1 + g.contour_half_width), s.profile.omega_max());
  ContourRegion reg;
  // long wavelength bound gives the low frequency
  reg.ws_min = bound(g.contour_lambda_s_max_um, wlo);
  reg.ws_max = bound(g.contour_lambda_s_min_um, whi);
  reg.wi_min = bound(g.contour_lambda_i_max_um, wlo);
  reg.wi_max = bound(g.contour_lambda_i_min_um, whi);
  reg.nx = g.contour_nx;
  reg.ny = g.contour_ny;
  ContourOptions opt{c.tolerances.contour_refine_vertices, c.tolerances.contour_trivial_band_cells,
                     c.tolerances.contour_tolerance_factor};
  std::vector<std::pair<double, double>> powers;
  if (g.contour_powers_w.empty()) powers.push_back({s.pump.power1_w, s.pump.power2_w});
  for (double p : g.contour_powers_w) powers.push_back({p, p});
  Outputs out;
  json meta = {{"pump", pump_json(s.pump)},
               {"region", {{"omega_s_min_rad_s", reg.ws_min}, {"omega_s_max_rad_s", reg.ws_max},
                           {"omega_i_min_rad_s", reg.wi_min}, {"omega_i_max_rad_s", reg.wi_max},
                           {"nx", reg.nx}, {"ny", reg.ny}}},
               {"contours", json::array()}};
  for (std::size_t k = 0; k < powers.size(); ++k) {
    const auto pump = s.pump.with_power(powers[k].first, powers[k].second);
    const auto contour = trace_contours(reg, pump, s.profile, opt);
    CsvWriter csv({"branch_label", "omega_s_rad_s", "omega_i_rad_s", "lambda_s_um", "lambda_i_um"});
    json branches = json::array();
    std::size_t row = 0;
    for (const auto& b : contour.branches) {
      branches.push_back({{"label", to_string(b.label)}, {"first_row", row}, {"rows", b.line.points.size()},
                          {"closed", b.line.closed}});
      for (const auto& p : b.line.points) {
        csv.raw({to_string(b.label), CsvWriter::cell(p.x), CsvWriter::cell(p.y), CsvWriter::cell(um_from_omega(p.x)),
                 CsvWriter::cell(um_from_omega(p.y))});
        ++row;
      }
    }
    const std::string name = powers.size() == 1 ? "contour.csv" : "contour_" + std::to_string(k) + ".csv";
    out.push_back({name, csv.str()});
    meta["contours"].push_back({{"file", name}, {"power1_w", pump.power1_w}, {"power2_w", pump.power2_w},
                                {"vertex_tolerance_per_m", contour.tolerance}, {"branches", branches}});
  }
  out.push_back({"contour.json", io::dump_json(meta)});
  return out;
}

inline Outputs cmd_singles(const RunConfig& c) {
  const auto s = make_setup(c);
  const auto spec = singles_spectrum(singles_grid(s.pump, s.profile, c.grids.singles_points), s.pump, s.profile,
                                     c.fiber.length_m);
  json j = {{"pump", pump_json(s.pump)}, {"length_m", c.fiber.length_m}};
  try {
    j["bandwidth"] = bandwidth_json(bandwidth_report(spec, bandwidth_options(c)));
  } catch (const TruncatedSpectrumError& e) {
    j["bandwidth"] = nullptr;
    j["bandwidth_error"] = e.what();
  }
  const auto tau = correlation_time(spec, {c.tolerances.void_level});
  j["correlation_time_s"] = tau.tau_s;
  j["correlation_time_truncated"] = tau.truncated;
  j["raman_windows"] = raman_windows(s.pump);
  return {{"singles.csv", singles_csv(spec)}, {"bandwidth.json", io::dump_json(j)}};
}

inline Outputs cmd_jsa(const RunConfig& c) {
  const auto s = make_setup(c);
  const auto& g = c.grids;
  double lo = 0, hi = 0;
  if (g.jsa_lambda_min_um && g.jsa_lambda_max_um) {
    lo = omega_from_um(*g.jsa_lambda_max_um);
    hi = omega_from_um(*g.jsa_lambda_min_um);
  } else {
    const auto spec = singles_spectrum(singles_grid(s.pump, s.profile, g.singles_points), s.pump, s.profile,
                                       c.fiber.length_m);
    const auto b = bandwidth_report(spec, bandwidth_options(c));
    const double wc = b.center_omega, half = g.jsa_window_fwhm * b.main_fwhm_rad_s;
    lo = g.jsa_lambda_max_um ? omega_from_um(*g.jsa_lambda_max_um) : wc - half;
    hi = g.jsa_lambda_min_um ? omega_from_um(*g.jsa_lambda_min_um) : wc + half;
  }
  if (!(hi > lo)) throw DomainError("jsa: empty frequency window");
  const double sum = s.pump.omega1 + s.pump.omega2;
  const auto ws = linspace(lo, hi, g.jsa_points);
  std::vector<double> wi(ws.size());
  for (std::size_t k = 0; k < ws.size(); ++k) wi[k] = sum - ws[ws.size() - 1 - k];
  JointSpectrum jsa;
  if (c.tolerances.jsa_method == "cw") {
    jsa = jsa_cw(ws, wi, s.pump, s.profile, c.fiber.length_m, c.tolerances.ridge_width_cells * grid_step(ws));
  } else {
    const auto a1 = SpectralEnvelope::gaussian(s.pump.omega1, s.pump.sigma);
    const auto a2 = SpectralEnvelope::gaussian(s.pump.omega2, s.pump.sigma);
    jsa = jsa_general(ws, wi, a1, a2, s.pump, s.profile, c.fiber.length_m,
                      {c.tolerances.quadrature_points_per_band, c.tolerances.gaussian_span_sigmas});
  }
  CsvWriter csv({"omega_s_rad_s", "omega_i_rad_s", "amp_re", "amp_im"});
  for (Eigen::Index a = 0; a < jsa.amplitude.rows(); ++a) {
    for (Eigen::Index b = 0; b < jsa.amplitude.cols(); ++b) {
      const auto v = jsa.amplitude(a, b);
      csv.row({ws[std::size_t(a)], wi[std::size_t(b)], v.real(), v.imag()});
    }
  }
  const auto k = schmidt_number(jsa, {c.tolerances.schmidt_normalization_tolerance});
  json j = {{"pump", pump_json(s.pump)},
            {"method", c.tolerances.jsa_method},
            {"omega_s_min_rad_s", ws.front()}, {"omega_s_max_rad_s", ws.back()},
            {"omega_i_min_rad_s", wi.front()}, {"omega_i_max_rad_s", wi.back()},
            {"points", ws.size()},
            {"normalization", jsa.convention},
            {"raw_norm", jsa.raw_norm},
            {"ridge_width_rad_s", jsa.ridge_width},
            {"ridge_resolved", jsa.ridge_resolved},
            {"schmidt_number", k.K},
            {"schmidt_method", k.method},
            {"schmidt_is_lower_bound", k.lower_bound}};
  return {{"jsa.csv", csv.str()}, {"jsa.json", io::dump_json(j)}};
}

inline Outputs cmd_design_sweep(const RunConfig& c) {
  const auto& sw = c.sweep;
  std::vector<double> radii = sw.radii_um;
  if (radii.empty()) radii = linspace(sw.radius_min_um, sw.radius_max_um, std::max<std::size_t>(sw.radius_points, 2));
  SweepSettings set;
  set.power_w = c.pump.power1_w;
  set.gamma = c.pump.gamma_per_w_km * 1e-3;
  set.length_m = c.fiber.length_m;
  set.grid_points = sw.grid_points;
  set.dispersion = c.dispersion;
  set.bandwidth = bandwidth_options(c);
  const auto rows = bandwidth_sweep(sw.fill, radii, set, c.sellmeier);
  CsvWriter csv({"r_um", "f", "lambda_zd_um", "fwhm_main_nm", "bw_inner_sat_nm", "bw_outer_sat_nm", "flags"});
  auto opt = [](const std::optional<double>& v) { return v ? CsvWriter::cell(*v) : std::string(); };
  for (const auto& r : rows) {
    std::string flags;
    for (const auto& f : r.flags) {
      if (!flags.empty()) flags += ';';
      std::string clean = f;
      for (auto& ch : clean) if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
      flags += clean;
    }
    csv.raw({CsvWriter::cell(r.radius_um), CsvWriter::cell(r.fill), opt(r.lambda_zd_um), opt(r.fwhm_main_nm),
             opt(r.bw_inner_sat_nm), opt(r.bw_outer_sat_nm), flags});
  }
  Outputs out{{"sweep.csv", csv.str()}};
  if (sw.k4_bracket_min_um && sw.k4_bracket_max_um) {
    RadiusSearchOptions ro;
    ro.dispersion = c.dispersion;
    const double r0 = find_k4_zero_radius(sw.fill, *sw.k4_bracket_min_um, *sw.k4_bracket_max_um, ro, c.sellmeier);
    out.push_back({"k4_zero_radius.json", io::dump_json({{"fill", sw.fill}, {"radius_um", r0}})});
  }
  return out;
}

inline Outputs cmd_ndp(const RunConfig& c) {
  const auto profile = make_profile(c);
  const double wz = profile.require_zero_dispersion_frequency();
  const double gamma = c.pump.gamma_per_w_km * 1e-3;
  const double shift = gamma * (c.pump.power1_w + c.pump.power2_w);
  NdpSearchOptions no;
  no.scan_points = c.tolerances.ndp_scan_points;
  no.continuum_tolerance = kTwoPi * c.tolerances.continuum_tolerance_hz;
  auto solutions_json = [&](const PumpSolutionSet& s) {
    json pairs = json::array();
    for (const auto& p : s.pairs) {
      pairs.push_back({{"omega1_rad_s", p.omega1}, {"omega2_rad_s", p.omega2}, {"lambda1_um", um_from_omega(p.omega1)},
                       {"lambda2_um", um_from_omega(p.omega2)}, {"residual_per_m", p.residual}});
    }
    json cont = nullptr;
    if (s.continuum) {
      cont = {{"omega1_min_rad_s", s.continuum->lo}, {"omega1_max_rad_s", s.continuum->hi},
              {"lambda_min_um", um_from_omega(s.continuum->hi)},
              {"lambda_max_um", um_from_omega(2 * s.omega_zd - s.continuum->hi)}};
    }
    return json{{"omega_dp_rad_s", s.omega_zd}, {"lambda_dp_um", um_from_omega(s.omega_zd)}, {"pairs", pairs},
                {"continuum", cont}, {"window_clipped", s.window_clipped}};
  };
  json sol = {{"design_power", solutions_json(find_ndp_pairs(profile, shift, no, wz))},
              {"low_power_limit", solutions_json(find_ndp_pairs(profile, 0.0, no, wz))},
              {"nonlinear_shift_per_m", shift},
              {"continuum_tolerance_rad_s", no.continuum_tolerance}};

  const auto dp = PumpConfig::degenerate(wz, c.pump.power1_w, gamma);
  ConditionOptions co;
  co.length_m = c.fiber.length_m;
  co.phasematch_fraction = c.tolerances.phasematch_fraction;
  co.slope_tolerance = c.tolerances.slope_tolerance;
  co.curvature_threshold = c.tolerances.curvature_threshold_fraction * kReferenceCurvature;
  const auto cond = evaluate_conditions(wz, wz, dp.with_power(0, 0), profile, co);
  const auto spec = singles_spectrum(singles_grid(dp, profile, c.grids.singles_points), dp, profile, c.fiber.length_m);
  const auto d = profile.k_derivatives(wz);
  json rep = {{"omega_zd_rad_s", wz},
              {"lambda_zd_um", um_from_omega(wz)},
              {"k3_s3_per_m", d[3]},
              {"k4_s4_per_m", d[4]},
              {"conditions_low_power",
               {{"phasematch_residual_per_m", cond.phasematch_residual},
                {"energy_residual_rad_s", cond.energy_residual},
                {"slope", cond.slope},
                {"curvature_s_per_rad", cond.curvature},
                {"curvature_formula_s_per_rad", io::optional_number(cond.curvature_formula)},
                {"curvature_threshold_s_per_rad", co.curvature_threshold},
                {"pass", {cond.pass_i, cond.pass_ii, cond.pass_iii, cond.pass_iv}}}}};
  try {
    rep["dp_bandwidth"] = bandwidth_json(bandwidth_report(spec, bandwidth_options(c)));
  } catch (const TruncatedSpectrumError& e) {
    rep["dp_bandwidth"] = nullptr;
    rep["dp_bandwidth_error"] = e.what();
  }
  rep["correlation_time_s"] = correlation_time(spec, {c.tolerances.void_level}).tau_s;
  return {{"pump_solutions.json", io::dump_json(sol)}, {"design_report.json", io::dump_json(rep)}};
}

inline Outputs cmd_interference(const RunConfig& c) {
  const auto profile = make_profile(c);
  const auto& ic = c.interference;
  double wdp = 0;
  if (ic.lambda_dp_um) wdp = omega_from_um(*ic.lambda_dp_um);
  else wdp = profile.require_zero_dispersion_frequency();
  MultiLinePumpSpec spec;
  spec.omega_dp = wdp;
  spec.omega_ndp1 = omega_from_um(ic.lambda_ndp1_um);
  if (ic.derive_ndp2 || !ic.lambda_ndp2_um) spec.omega_ndp2 = 2 * wdp - spec.omega_ndp1;
  else spec.omega_ndp2 = omega_from_um(*ic.lambda_ndp2_um);
  spec.band_width = omega_width_from_nm(um_from_omega(wdp), ic.band_width_nm);
  spec.total_power_w = ic.total_power_w;
  spec.gamma = c.pump.gamma_per_w_km * 1e-3;
  if (ic.theta_points < 2) throw ConfigError("interference.theta_points: need at least 2");
  const auto thetas = linspace(0.0, ic.theta_max, ic.theta_points);
  FluxOptions fo;
  fo.signal_points = ic.signal_points;
  fo.sum_points = ic.sum_points;
  fo.signal_window_fwhm = ic.signal_window_fwhm;
  fo.sum_window_bands = ic.sum_window_bands;
  fo.singles_points = c.grids.singles_points;
  fo.quadrature.points_per_band = c.tolerances.quadrature_points_per_band;
  const auto d = decompose_multiline(spec, profile, c.fiber.length_m, fo);
  const double f0 = integrated_flux(d, multiline_amplitude(d, 0.0));
  if (!(f0 > 0)) throw NumericError("interference: no emission in the region of interest");
  CsvWriter csv({"theta_rad", "flux_norm"});
  Outputs out;
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const auto f = multiline_amplitude(d, thetas[k]);
    csv.row({thetas[k], integrated_flux(d, f) / f0});
    if (ic.emit_singles) {
      const auto s = multiline_singles(d, f);
      double peak0 = 0;
      for (double v : multiline_singles(d, multiline_amplitude(d, 0.0))) peak0 = std::max(peak0, v);
      CsvWriter sc({"omega_rad_s", "lambda_um", "intensity_norm"});
      for (std::size_t i = 0; i < s.size(); ++i) sc.row({d.omega_s[i], um_from_omega(d.omega_s[i]), s[i] / peak0});
      out.push_back({"singles_theta/theta_" + std::to_string(k) + ".csv", sc.str()});
    }
  }
  out.insert(out.begin(), {"flux.csv", csv.str()});
  const double dp_only = integrated_flux(d, multiline_amplitude(d, 0.0, PathwaySelection::dp_only));
  const double ndp_only = integrated_flux(d, multiline_amplitude(d, 0.0, PathwaySelection::ndp_only));
  json j = {{"lambda_dp_um", um_from_omega(spec.omega_dp)},
            {"lambda_ndp1_um", um_from_omega(spec.omega_ndp1)},
            {"lambda_ndp2_um", um_from_omega(spec.omega_ndp2)},
            {"band_width_rad_s", spec.band_width},
            {"total_power_w", spec.total_power_w},
            {"signal_window_rad_s", {d.omega_s.front() - 0.5 * d.d_omega_s, d.omega_s.back() + 0.5 * d.d_omega_s}},
            {"sum_window_rad_s", {d.sigma.front() - 0.5 * d.d_sigma, d.sigma.back() + 0.5 * d.d_sigma}},
            {"main_fwhm_rad_s", d.main_fwhm_rad_s},
            {"dp_only_over_ndp_only_flux", dp_only / ndp_only}};
  out.push_back({"interference.json", io::dump_json(j)});
  return out;
}

using Command = std::function<Outputs(const RunConfig&)>;

inline const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> m = {
      {"dispersion", cmd_dispersion}, {"contour", cmd_contour}, {"singles", cmd_singles},
      {"jsa", cmd_jsa},               {"design-sweep", cmd_design_sweep}, {"ndp", cmd_ndp},
      {"interference", cmd_interference}};
  return m;
}

/// Runs a command and writes its files plus manifest.json into `dir`. Files
/// are only written once every computation has succeeded.
inline void run_and_write(const std::string& name, const RunConfig& c, const std::filesystem::path& dir,
                          std::optional<long long> seed = std::nullopt) {
  const auto it = commands().find(name);
  if (it == commands().end()) throw ConfigError("unknown command " + name);
  const Outputs files = it->second(c);
  json manifest = {{"tool", "sfwm"},
                   {"version", kVersion},
                   {"command", name},
                   {"config_sha256", sha256_hex(io::emit_config(c))},
                   {"seed", seed ? json(*seed) : json(nullptr)},
                   {"files", json::array()}};
  for (const auto& f : files) {
    manifest["files"].push_back({{"path", f.name}, {"sha256", sha256_hex(f.content)}, {"bytes", f.content.size()}});
  }
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& rel, const std::string& content) {
    const auto path = dir / rel;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream o(path, std::ios::binary);
    if (!o) throw ConfigError("cannot write " + path.string());
    o << content;
  };
  for (const auto& f : files) write(f.name, f.content);
  write("manifest.json", io::dump_json(manifest));
}

}  // namespace sfwm::cli
