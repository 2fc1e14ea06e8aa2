#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sfwm/design.hpp"
#include "sfwm/dispersion.hpp"
#include "sfwm/interference.hpp"
#include "sfwm/io/json_util.hpp"
#include "sfwm/phasematch.hpp"
#include "sfwm/twophoton.hpp"

namespace sfwm::io {

/// Pump section. Missing wavelengths select the fibre's zero-dispersion
/// frequency; one wavelength gives degenerate pumps; `symmetric_partner`
/// derives lambda2 as the partner of lambda1 about omega_zd.
struct PumpSection {
  std::optional<double> lambda1_um, lambda2_um;
  bool symmetric_partner = false;
  double power1_w = 5.0, power2_w = 5.0;
  double gamma_per_w_km = 70.0;
  double sigma_hz = 50e6;

  bool operator==(const PumpSection&) const = default;
};

struct GridSection {
  double dispersion_lambda_min_um = 0.4, dispersion_lambda_max_um = 3.0;
  std::size_t dispersion_points = 200;
  std::size_t singles_points = (1u << 17) + 1;
  /// JSA window in signal wavelength; absent bounds default to the main mode
  /// +- jsa_window_fwhm.
  std::optional<double> jsa_lambda_min_um, jsa_lambda_max_um;
  double jsa_window_fwhm = 0.75;
  std::size_t jsa_points = 400;
  std::optional<double> contour_lambda_s_min_um, contour_lambda_s_max_um;
  std::optional<double> contour_lambda_i_min_um, contour_lambda_i_max_um;
  double contour_half_width = 0.3;  ///< default region: omega_c (1 +- this)
  std::size_t contour_nx = 800, contour_ny = 800;
  std::vector<double> contour_powers_w;  ///< empty: the pump powers

  bool operator==(const GridSection&) const = default;
};

struct ToleranceSection {
  double half_level = 0.5;
  double void_level = 0.01;
  std::size_t min_main_samples = 50;
  double ridge_width_cells = 4.0;
  std::string jsa_method = "cw";  ///< cw | gaussian
  std::size_t quadrature_points_per_band = 32;
  double gaussian_span_sigmas = 8.0;
  double schmidt_normalization_tolerance = 1e-6;
  std::size_t ndp_scan_points = 2000;
  double continuum_tolerance_hz = 0.9e9;
  double phasematch_fraction = 0.1;
  double slope_tolerance = 1e-3;
  double curvature_threshold_fraction = 0.05;
  double contour_trivial_band_cells = 3.0;
  double contour_tolerance_factor = 1e-3;
  bool contour_refine_vertices = true;

  bool operator==(const ToleranceSection&) const = default;
};

struct SweepSection {
  double fill = 0.1;
  std::vector<double> radii_um;
  double radius_min_um = 1.75, radius_max_um = 1.95;
  std::size_t radius_points = 21;
  std::size_t grid_points = (1u << 16) + 1;
  std::optional<double> k4_bracket_min_um, k4_bracket_max_um;

  bool operator==(const SweepSection&) const = default;
};

struct InterferenceSection {
  std::optional<double> lambda_dp_um;  ///< absent: omega_zd
  double lambda_ndp1_um = 0.7904;
  bool derive_ndp2 = true;
  std::optional<double> lambda_ndp2_um;
  double band_width_nm = 0.5;
  std::size_t theta_points = 9;
  double theta_max = 3.14159265358979323846;
  double total_power_w = 5.0;
  std::size_t signal_points = 512;
  std::size_t sum_points = 48;
  double signal_window_fwhm = 1.5;
  double sum_window_bands = 1.5;
  bool emit_singles = false;

  bool operator==(const InterferenceSection&) const = default;
};

struct RunConfig {
  FiberGeometry fiber{};
  SellmeierModel sellmeier = SellmeierModel::fused_silica();
  DispersionOptions dispersion{};
  PumpSection pump{};
  GridSection grids{};
  ToleranceSection tolerances{};
  SweepSection sweep{};
  InterferenceSection interference{};
  std::string output_dir = "out";
  std::size_t threads = 0;

  bool operator==(const RunConfig&) const = default;
};

// ----------------------------------------------------------------- emit

inline json to_json(const RunConfig& c) {
  json j;
  j["fiber"] = {{"core_radius_um", c.fiber.core_radius_um},
                {"air_filling_fraction", c.fiber.air_filling_fraction},
                {"length_m", c.fiber.length_m}};
  j["sellmeier"] = {{"b", c.sellmeier.strengths},
                    {"c_um2", c.sellmeier.resonances_um2},
                    {"lambda_min_um", c.sellmeier.lambda_min_um},
                    {"lambda_max_um", c.sellmeier.lambda_max_um}};
  const auto& d = c.dispersion;
  j["dispersion"] = {{"mode_model", std::string(to_string(d.mode_model))},
                     {"cache_segments", d.cache_segments},
                     {"cache_nodes_per_segment", d.cache_nodes_per_segment},
                     {"derivative_half_width", d.derivative_half_width},
                     {"derivative_nodes", d.derivative_nodes},
                     {"derivative_degree", d.derivative_degree},
                     {"high_order_half_width", d.high_order_half_width},
                     {"high_order_nodes", d.high_order_nodes},
                     {"high_order_degree", d.high_order_degree},
                     {"zd_scan_points", d.zd_scan_points},
                     {"zd_relative_tolerance", d.zd_relative_tolerance},
                     {"enforce_model_range", d.enforce_model_range}};
  const auto& p = c.pump;
  j["pump"] = {{"lambda1_um", optional_number(p.lambda1_um)},
               {"lambda2_um", optional_number(p.lambda2_um)},
               {"symmetric_partner", p.symmetric_partner},
               {"power1_w", p.power1_w},
               {"power2_w", p.power2_w},
               {"gamma_per_w_km", p.gamma_per_w_km},
               {"sigma_hz", p.sigma_hz}};
  const auto& g = c.grids;
  j["grids"] = {{"dispersion_lambda_min_um", g.dispersion_lambda_min_um},
                {"dispersion_lambda_max_um", g.dispersion_lambda_max_um},
                {"dispersion_points", g.dispersion_points},
                {"singles_points", g.singles_points},
                {"jsa_lambda_min_um", optional_number(g.jsa_lambda_min_um)},
                {"jsa_lambda_max_um", optional_number(g.jsa_lambda_max_um)},
                {"jsa_window_fwhm", g.jsa_window_fwhm},
                {"jsa_points", g.jsa_points},
                {"contour_lambda_s_min_um", optional_number(g.contour_lambda_s_min_um)},
                {"contour_lambda_s_max_um", optional_number(g.contour_lambda_s_max_um)},
                {"contour_lambda_i_min_um", optional_number(g.contour_lambda_i_min_um)},
                {"contour_lambda_i_max_um", optional_number(g.contour_lambda_i_max_um)},
                {"contour_half_width", g.contour_half_width},
                {"contour_nx", g.contour_nx},
                {"contour_ny", g.contour_ny},
                {"contour_powers_w", g.contour_powers_w}};
  const auto& t = c.tolerances;
  j["tolerances"] = {{"half_level", t.half_level},
                     {"void_level", t.void_level},
                     {"min_main_samples", t.min_main_samples},
                     {"ridge_width_cells", t.ridge_width_cells},
                     {"jsa_method", t.jsa_method},
                     {"quadrature_points_per_band", t.quadrature_points_per_band},
                     {"gaussian_span_sigmas", t.gaussian_span_sigmas},
                     {"schmidt_normalization_tolerance", t.schmidt_normalization_tolerance},
                     {"ndp_scan_points", t.ndp_scan_points},
                     {"continuum_tolerance_hz", t.continuum_tolerance_hz},
                     {"phasematch_fraction", t.phasematch_fraction},
                     {"slope_tolerance", t.slope_tolerance},
                     {"curvature_threshold_fraction", t.curvature_threshold_fraction},
                     {"contour_trivial_band_cells", t.contour_trivial_band_cells},
                     {"contour_tolerance_factor", t.contour_tolerance_factor},
                     {"contour_refine_vertices", t.contour_refine_vertices}};
  const auto& s = c.sweep;
  j["sweep"] = {{"fill", s.fill},
                {"radii_um", s.radii_um},
                {"radius_min_um", s.radius_min_um},
                {"radius_max_um", s.radius_max_um},
                {"radius_points", s.radius_points},
                {"grid_points", s.grid_points},
                {"k4_bracket_min_um", optional_number(s.k4_bracket_min_um)},
                {"k4_bracket_max_um", optional_number(s.k4_bracket_max_um)}};
  const auto& i = c.interference;
  j["interference"] = {{"lambda_dp_um", optional_number(i.lambda_dp_um)},
                       {"lambda_ndp1_um", i.lambda_ndp1_um},
                       {"derive_ndp2", i.derive_ndp2},
                       {"lambda_ndp2_um", optional_number(i.lambda_ndp2_um)},
                       {"band_width_nm", i.band_width_nm},
                       {"theta_points", i.theta_points},
                       {"theta_max", i.theta_max},
                       {"total_power_w", i.total_power_w},
                       {"signal_points", i.signal_points},
                       {"sum_points", i.sum_points},
                       {"signal_window_fwhm", i.signal_window_fwhm},
                       {"sum_window_bands", i.sum_window_bands},
                       {"emit_singles", i.emit_singles}};
  j["output_dir"] = c.output_dir;
  j["threads"] = c.threads;
  return j;
}

// ---------------------------------------------------------------- parse

namespace detail {

template <std::size_t N>
void read_array(Reader& r, const std::string& key, std::array<double, N>& out) {
  std::vector<double> v(out.begin(), out.end());
  r.get(key, v);
  if (v.size() != N) throw ConfigError(r.where(key) + ": expected " + std::to_string(N) + " numbers");
  std::copy(v.begin(), v.end(), out.begin());
}

}  // namespace detail

inline RunConfig from_json(const json& j) {
  RunConfig c;
  Reader root(j, "");
  {
    auto r = root.child("fiber");
    r.get("core_radius_um", c.fiber.core_radius_um);
    r.get("air_filling_fraction", c.fiber.air_filling_fraction);
    r.get("length_m", c.fiber.length_m);
    r.finish();
  }
  {
    auto r = root.child("sellmeier");
    detail::read_array(r, "b", c.sellmeier.strengths);
    detail::read_array(r, "c_um2", c.sellmeier.resonances_um2);
    r.get("lambda_min_um", c.sellmeier.lambda_min_um);
    r.get("lambda_max_um", c.sellmeier.lambda_max_um);
    r.finish();
  }
  {
    auto r = root.child("dispersion");
    auto& d = c.dispersion;
    std::string model(to_string(d.mode_model));
    r.get("mode_model", model);
    if (model == "vector_he11") d.mode_model = ModeModel::vector_he11;
    else if (model == "scalar_lp01") d.mode_model = ModeModel::scalar_lp01;
    else throw ConfigError(r.where("mode_model") + ": expected vector_he11 or scalar_lp01");
    r.get("cache_segments", d.cache_segments);
    r.get("cache_nodes_per_segment", d.cache_nodes_per_segment);
    r.get("derivative_half_width", d.derivative_half_width);
    r.get("derivative_nodes", d.derivative_nodes);
    r.get("derivative_degree", d.derivative_degree);
    r.get("high_order_half_width", d.high_order_half_width);
    r.get("high_order_nodes", d.high_order_nodes);
    r.get("high_order_degree", d.high_order_degree);
    r.get("zd_scan_points", d.zd_scan_points);
    r.get("zd_relative_tolerance", d.zd_relative_tolerance);
    r.get("enforce_model_range", d.enforce_model_range);
    r.finish();
  }
  {
    auto r = root.child("pump");
    auto& p = c.pump;
    r.get("lambda1_um", p.lambda1_um);
    r.get("lambda2_um", p.lambda2_um);
    r.get("symmetric_partner", p.symmetric_partner);
    r.get("power1_w", p.power1_w);
    r.get("power2_w", p.power2_w);
    r.get("gamma_per_w_km", p.gamma_per_w_km);
    r.get("sigma_hz", p.sigma_hz);
    r.finish();
  }
  {
    auto r = root.child("grids");
    auto& g = c.grids;
    r.get("dispersion_lambda_min_um", g.dispersion_lambda_min_um);
    r.get("dispersion_lambda_max_um", g.dispersion_lambda_max_um);
    r.get("dispersion_points", g.dispersion_points);
    r.get("singles_points", g.singles_points);
    r.get("jsa_lambda_min_um", g.jsa_lambda_min_um);
    r.get("jsa_lambda_max_um", g.jsa_lambda_max_um);
    r.get("jsa_window_fwhm", g.jsa_window_fwhm);
    r.get("jsa_points", g.jsa_points);
    r.get("contour_lambda_s_min_um", g.contour_lambda_s_min_um);
    r.get("contour_lambda_s_max_um", g.contour_lambda_s_max_um);
    r.get("contour_lambda_i_min_um", g.contour_lambda_i_min_um);
    r.get("contour_lambda_i_max_um", g.contour_lambda_i_max_um);
    r.get("contour_half_width", g.contour_half_width);
    r.get("contour_nx", g.contour_nx);
    r.get("contour_ny", g.contour_ny);
    r.get("contour_powers_w", g.contour_powers_w);
    r.finish();
  }
  {
    auto r = root.child("tolerances");
    auto& t = c.tolerances;
    r.get("half_level", t.half_level);
    r.get("void_level", t.void_level);
    r.get("min_main_samples", t.min_main_samples);
    r.get("ridge_width_cells", t.ridge_width_cells);
    r.get("jsa_method", t.jsa_method);
    if (t.jsa_method != "cw" && t.jsa_method != "gaussian") {
      throw ConfigError(r.where("jsa_method") + ": expected cw or gaussian");
    }
    r.get("quadrature_points_per_band", t.quadrature_points_per_band);
    r.get("gaussian_span_sigmas", t.gaussian_span_sigmas);
    r.get("schmidt_normalization_tolerance", t.schmidt_normalization_tolerance);
    r.get("ndp_scan_points", t.ndp_scan_points);
    r.get("continuum_tolerance_hz", t.continuum_tolerance_hz);
    r.get("phasematch_fraction", t.phasematch_fraction);
    r.get("slope_tolerance", t.slope_tolerance);
    r.get("curvature_threshold_fraction", t.curvature_threshold_fraction);
    r.get("contour_trivial_band_cells", t.contour_trivial_band_cells);
    r.get("contour_tolerance_factor", t.contour_tolerance_factor);
    r.get("contour_refine_vertices", t.contour_refine_vertices);
    r.finish();
  }
  {
    auto r = root.child("sweep");
    auto& s = c.sweep;
    r.get("fill", s.fill);
    r.get("radii_um", s.radii_um);
    r.get("radius_min_um", s.radius_min_um);
    r.get("radius_max_um", s.radius_max_um);
    r.get("radius_points", s.radius_points);
    r.get("grid_points", s.grid_points);
    r.get("k4_bracket_min_um", s.k4_bracket_min_um);
    r.get("k4_bracket_max_um", s.k4_bracket_max_um);
    r.finish();
  }
  {
    auto r = root.child("interference");
    auto& i = c.interference;
    r.get("lambda_dp_um", i.lambda_dp_um);
    r.get("lambda_ndp1_um", i.lambda_ndp1_um);
    r.get("derive_ndp2", i.derive_ndp2);
    r.get("lambda_ndp2_um", i.lambda_ndp2_um);
    r.get("band_width_nm", i.band_width_nm);
    r.get("theta_points", i.theta_points);
    r.get("theta_max", i.theta_max);
    r.get("total_power_w", i.total_power_w);
    r.get("signal_points", i.signal_points);
    r.get("sum_points", i.sum_points);
    r.get("signal_window_fwhm", i.signal_window_fwhm);
    r.get("sum_window_bands", i.sum_window_bands);
    r.get("emit_singles", i.emit_singles);
    r.finish();
  }
  root.get("output_dir", c.output_dir);
  root.get("threads", c.threads);
  root.finish();
  c.sellmeier.validate();
  return c;
}

inline RunConfig parse_config(const std::string& text, const std::string& source = "config") {
  return from_json(parse_json_text(text, source));
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

inline std::string emit_config(const RunConfig& c) { return dump_json(to_json(c)); }

}  // namespace sfwm::io
