#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <fftw3.h>

#include "sfwm/dispersion.hpp"
#include "sfwm/errors.hpp"
#include "sfwm/parallel.hpp"
#include "sfwm/phasematch.hpp"
#include "sfwm/units.hpp"

namespace sfwm {

using cplx = std::complex<double>;

/// n equally spaced points from lo to hi inclusive.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw ConfigError("grid needs at least two points");
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = lo + (hi - lo) * double(k) / double(n - 1);
  v.back() = hi;
  return v;
}

/// Grid symmetric about `center`: v[k] + v[n-1-k] == 2 center up to rounding.
inline std::vector<double> symmetric_grid(double center, double half_width, std::size_t n) {
  if (n < 2) throw ConfigError("grid needs at least two points");
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (2.0 * double(k) - double(n - 1)) / double(n - 1);
    v[k] = center + half_width * t;
  }
  return v;
}

/// Largest grid centred on (omega1 + omega2) / 2 whose conjugate frequencies
/// stay inside the profile's validity window.
inline std::vector<double> singles_grid(const PumpConfig& pump, const DispersionProfile& profile, std::size_t n) {
  const double c = 0.5 * (pump.omega1 + pump.omega2);
  const double half = std::min(c - profile.omega_min(), profile.omega_max() - c);
  if (!(half > 0)) throw DomainError("singles grid: pump centre outside the validity window");
  return symmetric_grid(c, half * (1 - 1e-12), n);
}

inline double grid_step(const std::vector<double>& g) {
  if (g.size() < 2) throw ConfigError("grid needs at least two points");
  const double h = (g.back() - g.front()) / double(g.size() - 1);
  if (!(h > 0)) throw ConfigError("grid must be strictly increasing");
  return h;
}

// ---------------------------------------------------------------- envelopes

struct GaussianEnvelope {
  double center = 0;
  double sigma = 0;  ///< amplitude exp(-(w - center)^2 / (2 sigma^2))
};

struct RectBand {
  double center = 0;
  double width = 0;
  cplx amplitude{1.0, 0.0};
};

/// Pump amplitude alpha(omega): a Gaussian line or a set of flat bands.
struct SpectralEnvelope {
  std::variant<GaussianEnvelope, std::vector<RectBand>> shape;

  static SpectralEnvelope gaussian(double center, double sigma) { return {GaussianEnvelope{center, sigma}}; }
  static SpectralEnvelope bands(std::vector<RectBand> b) { return {std::move(b)}; }

  cplx operator()(double w) const {
    if (const auto* g = std::get_if<GaussianEnvelope>(&shape)) {
      const double x = (w - g->center) / g->sigma;
      return {std::exp(-0.5 * x * x), 0.0};
    }
    cplx a{0, 0};
    for (const auto& b : std::get<std::vector<RectBand>>(shape)) {
      if (std::abs(w - b.center) <= 0.5 * b.width) a += b.amplitude;
    }
    return a;
  }

  /// Integral of |alpha|^2 over omega.
  double energy() const {
    if (const auto* g = std::get_if<GaussianEnvelope>(&shape)) return std::sqrt(std::numbers::pi) * g->sigma;
    double e = 0;
    for (const auto& b : std::get<std::vector<RectBand>>(shape)) e += std::norm(b.amplitude) * b.width;
    return e;
  }

  /// Intervals on which alpha may be non-zero, with the width that sets the
  /// quadrature step for each.
  struct Piece {
    double lo, hi, scale;
  };
  std::vector<Piece> pieces(double gaussian_span) const {
    std::vector<Piece> out;
    if (const auto* g = std::get_if<GaussianEnvelope>(&shape)) {
      out.push_back({g->center - gaussian_span * g->sigma, g->center + gaussian_span * g->sigma, 2.0 * g->sigma});
      return out;
    }
    for (const auto& b : std::get<std::vector<RectBand>>(shape)) {
      out.push_back({b.center - 0.5 * b.width, b.center + 0.5 * b.width, b.width});
    }
    return out;
  }

  void validate() const {
    if (const auto* g = std::get_if<GaussianEnvelope>(&shape)) {
      if (!(g->sigma > 0) || !(g->center > 0)) throw ConfigError("envelope: gaussian needs center > 0 and sigma > 0");
      return;
    }
    const auto& bs = std::get<std::vector<RectBand>>(shape);
    if (bs.empty()) throw ConfigError("envelope: no bands");
    for (const auto& b : bs) {
      if (!(b.width > 0) || !(b.center > 0)) throw ConfigError("envelope: bands need center > 0 and width > 0");
    }
    if (!(energy() > 0)) throw ConfigError("envelope: zero total power");
  }
};

// ------------------------------------------------------------------ spectra

struct SinglesSpectrum {
  std::vector<double> omega;
  std::vector<double> intensity;  ///< unit peak
  std::vector<cplx> amplitude;    ///< same scaling as intensity
  PumpConfig pump;
  double length_m = 0;
};

/// f(omega) = sinc(L dk / 2) exp(i L dk / 2) with dk = delta_k_sing(omega).
inline cplx singles_amplitude(double w, const PumpConfig& pump, const DispersionProfile& profile, double length_m) {
  const double phi = 0.5 * length_m * delta_k_sing(w, pump, profile);
  return sinc(phi) * std::polar(1.0, phi);
}

inline SinglesSpectrum singles_spectrum(const std::vector<double>& omega, const PumpConfig& pump,
                                        const DispersionProfile& profile, double length_m) {
  pump.validate();
  if (omega.empty()) throw ConfigError("singles: empty grid");
  if (!(length_m > 0)) throw ConfigError("singles: fiber length must be > 0");
  SinglesSpectrum s;
  s.omega = omega;
  s.pump = pump;
  s.length_m = length_m;
  s.amplitude.resize(omega.size());
  s.intensity.resize(omega.size());
  parallel_for(omega.size(), [&](std::size_t k) { s.amplitude[k] = singles_amplitude(omega[k], pump, profile, length_m); });
  double peak = 0;
  for (std::size_t k = 0; k < omega.size(); ++k) peak = std::max(peak, std::norm(s.amplitude[k]));
  if (!(peak > 0)) throw NumericError("singles: spectrum vanishes on the grid");
  const double scale = 1.0 / std::sqrt(peak);
  for (std::size_t k = 0; k < omega.size(); ++k) {
    s.amplitude[k] *= scale;
    s.intensity[k] = std::min(1.0, std::norm(s.amplitude[k]));
  }
  return s;
}

// ---------------------------------------------------------- joint spectrum

struct JointSpectrum {
  std::vector<double> omega_s, omega_i;
  Eigen::MatrixXcd amplitude;  ///< rows: omega_s, columns: omega_i
  double raw_norm = 0;         ///< sum |F|^2 dws dwi before normalisation
  double ridge_width = 0;      ///< energy-delta rendering width (rad/s), 0 if none
  bool ridge_resolved = true;  ///< false when the ridge is narrower than one cell
  std::string convention = "sum |F|^2 dws dwi = 1";

  double cell_area() const { return grid_step(omega_s) * grid_step(omega_i); }
  double norm() const { return amplitude.squaredNorm() * cell_area(); }
};

inline void normalize(JointSpectrum& j) {
  const double n = j.amplitude.squaredNorm() * j.cell_area();
  if (!(n > 0) || !std::isfinite(n)) throw NumericError("joint spectrum: zero or non-finite norm");
  j.raw_norm = n;
  j.amplitude /= std::sqrt(n);
}

/// Monochromatic-pump joint amplitude: the energy delta is rendered as a
/// unit-area Gaussian ridge of standard deviation `ridge_width` along
/// omega_s + omega_i (default four omega_s cells).
inline JointSpectrum jsa_cw(const std::vector<double>& ws, const std::vector<double>& wi, const PumpConfig& pump,
                            const DispersionProfile& profile, double length_m, double ridge_width = 0) {
  pump.validate();
  const double hs = grid_step(ws);
  grid_step(wi);
  if (ridge_width <= 0) ridge_width = 4.0 * hs;
  JointSpectrum j;
  j.omega_s = ws;
  j.omega_i = wi;
  j.ridge_width = ridge_width;
  j.ridge_resolved = ridge_width >= hs;
  j.amplitude.setZero(Eigen::Index(ws.size()), Eigen::Index(wi.size()));
  const double sum = pump.omega1 + pump.omega2;
  const double cut = 9.0 * ridge_width;  // exp(-40.5) is below double resolution of the peak
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * ridge_width);
  parallel_for(ws.size(), [&](std::size_t a) {
    for (std::size_t b = 0; b < wi.size(); ++b) {
      const double x = ws[a] + wi[b] - sum;
      if (std::abs(x) > cut) continue;
      const double ridge = norm * std::exp(-0.5 * (x / ridge_width) * (x / ridge_width));
      const double phi = 0.5 * length_m * delta_k_cw(ws[a], wi[b], pump, profile);
      j.amplitude(Eigen::Index(a), Eigen::Index(b)) = ridge * sinc(phi) * std::polar(1.0, phi);
    }
  });
  normalize(j);
  return j;
}

struct QuadratureOptions {
  std::size_t points_per_band = 32;
  double gaussian_span = 8.0;  ///< Gaussian envelopes are integrated over +- span sigma
};

namespace detail {

/// Integral over w' of alpha1(w') alpha2(sum - w') sinc(L dk / 2) exp(i L dk / 2)
/// with dk = k(w') + k(sum - w') - k(ws) - k(wi) - shift.
inline cplx general_integrand_sum(double ws, double wi, const SpectralEnvelope& a1, const SpectralEnvelope& a2,
                                  const std::vector<SpectralEnvelope::Piece>& p1,
                                  const std::vector<SpectralEnvelope::Piece>& p2, double shift,
                                  const DispersionProfile& profile, double length_m, std::size_t per_band,
                                  double ks_plus_ki) {
  const double sum = ws + wi;
  cplx acc{0, 0};
  for (const auto& x : p1) {
    for (const auto& y : p2) {
      const double lo = std::max(x.lo, sum - y.hi), hi = std::min(x.hi, sum - y.lo);
      if (!(hi > lo)) continue;
      const double h = std::min(x.scale, y.scale) / double(per_band);
      const std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / h)));
      const double step = (hi - lo) / double(n);
      for (std::size_t k = 0; k < n; ++k) {
        const double w = lo + (double(k) + 0.5) * step;
        const cplx amp = a1(w) * a2(sum - w);
        if (amp == cplx{0, 0}) continue;
        const double phi = 0.5 * length_m * (profile.k(w) + profile.k(sum - w) - ks_plus_ki - shift);
        acc += amp * sinc(phi) * std::polar(1.0, phi) * step;
      }
    }
  }
  return acc;
}

inline void check_resolution(const std::vector<SpectralEnvelope::Piece>& p, std::size_t per_band) {
  if (per_band < 8) {
    std::ostringstream os;
    os << "jsa_general: " << per_band << " quadrature points per band; at least 8 are needed";
    throw ResolutionError(os.str());
  }
  for (const auto& x : p) {
    if (!(x.scale > 0)) throw ResolutionError("jsa_general: envelope band of zero width");
  }
}

}  // namespace detail

/// Joint amplitude for arbitrary pump envelopes by quadrature over the first
/// pump frequency. `pump` supplies the powers and nonlinear parameters; its
/// centre frequencies are not used.
inline JointSpectrum jsa_general(const std::vector<double>& ws, const std::vector<double>& wi,
                                 const SpectralEnvelope& alpha1, const SpectralEnvelope& alpha2,
                                 const PumpConfig& pump, const DispersionProfile& profile, double length_m,
                                 const QuadratureOptions& q = {}) {
  alpha1.validate();
  alpha2.validate();
  grid_step(ws);
  grid_step(wi);
  const auto p1 = alpha1.pieces(q.gaussian_span), p2 = alpha2.pieces(q.gaussian_span);
  detail::check_resolution(p1, q.points_per_band);
  detail::check_resolution(p2, q.points_per_band);
  for (const auto& x : p1) { profile.require(x.lo, "pump band edge"); profile.require(x.hi, "pump band edge"); }
  for (const auto& x : p2) { profile.require(x.lo, "pump band edge"); profile.require(x.hi, "pump band edge"); }
  const double shift = pump.nonlinear_shift();
  JointSpectrum j;
  j.omega_s = ws;
  j.omega_i = wi;
  j.amplitude.setZero(Eigen::Index(ws.size()), Eigen::Index(wi.size()));
  std::vector<double> ki(wi.size());
  for (std::size_t b = 0; b < wi.size(); ++b) ki[b] = profile.k(wi[b]);
  parallel_for(ws.size(), [&](std::size_t a) {
    const double ks = profile.k(ws[a]);
    for (std::size_t b = 0; b < wi.size(); ++b) {
      j.amplitude(Eigen::Index(a), Eigen::Index(b)) = detail::general_integrand_sum(
          ws[a], wi[b], alpha1, alpha2, p1, p2, shift, profile, length_m, q.points_per_band, ks + ki[b]);
    }
  });
  normalize(j);
  return j;
}

// ----------------------------------------------------------- schmidt number

struct SchmidtResult {
  double K = 0;
  std::vector<double> eigenvalues;  ///< normalised squared singular values, when computed
  std::string method;
  bool lower_bound = false;  ///< ridge below grid resolution: K grows with refinement
};

struct SchmidtOptions {
  double normalization_tolerance = 1e-6;
  /// Matrices up to this many entries go through a full SVD; larger ones use
  /// K = 1 / ||A A^H||_F^2, which needs no decomposition.
  std::size_t svd_max_entries = 1'000'000;
};

inline SchmidtResult schmidt_number(const JointSpectrum& j, const SchmidtOptions& opt = {}) {
  const double n = j.norm();
  if (!(std::abs(n - 1.0) <= opt.normalization_tolerance)) {
    std::ostringstream os;
    os << "schmidt_number: joint spectrum not normalised (sum |F|^2 dA = " << n << ")";
    throw ContractError(os.str());
  }
  const double w = std::sqrt(j.cell_area());
  SchmidtResult r;
  r.lower_bound = !j.ridge_resolved;
  const auto entries = std::size_t(j.amplitude.rows()) * std::size_t(j.amplitude.cols());
  if (entries <= opt.svd_max_entries) {
    const Eigen::MatrixXcd a = j.amplitude * w;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    const auto& sv = svd.singularValues();
    double total = 0, sq = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) total += sv[k] * sv[k];
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      const double l = sv[k] * sv[k] / total;
      r.eigenvalues.push_back(l);
      sq += l * l;
    }
    r.K = 1.0 / sq;
    r.method = "svd";
    return r;
  }
  // Gram route; sparse when most of the matrix is zero (ridge states).
  std::vector<Eigen::Triplet<cplx>> trip;
  const auto nnz_limit = entries / 10;
  bool sparse = true;
  for (Eigen::Index c = 0; c < j.amplitude.cols() && sparse; ++c) {
    for (Eigen::Index rr = 0; rr < j.amplitude.rows(); ++rr) {
      const cplx v = j.amplitude(rr, c);
      if (v != cplx{0, 0}) trip.emplace_back(rr, c, v * w);
    }
    if (trip.size() > nnz_limit) sparse = false;
  }
  double fro2 = 0, total = 0;
  if (sparse) {
    Eigen::SparseMatrix<cplx> a(j.amplitude.rows(), j.amplitude.cols());
    a.setFromTriplets(trip.begin(), trip.end());
    const Eigen::SparseMatrix<cplx> g = (a * a.adjoint()).pruned();
    total = a.squaredNorm();
    fro2 = g.squaredNorm();
    r.method = "gram-sparse";
  } else {
    const Eigen::MatrixXcd a = j.amplitude * w;
    const Eigen::MatrixXcd g = a * a.adjoint();
    total = a.squaredNorm();
    fro2 = g.squaredNorm();
    r.method = "gram-dense";
  }
  r.K = total * total / fro2;
  return r;
}

// --------------------------------------------------------- bandwidth report

class TruncatedSpectrumError : public NumericError {
 public:
  using NumericError::NumericError;
};

struct SatellitePair {
  double low_peak_omega = 0, high_peak_omega = 0;
  double low_edge_omega = 0, high_edge_omega = 0;  ///< outer half-max crossings
  double bandwidth_nm = 0;
  double bandwidth_rad_s = 0;
  bool truncated = false;  ///< an outer slope reaches the grid edge
};

struct BandwidthOptions {
  double half_level = 0.5;
  double void_level = 0.01;
  std::size_t min_main_samples = 50;
};

struct BandwidthReport {
  double center_omega = 0;
  double main_low_omega = 0, main_high_omega = 0;
  double main_fwhm_nm = 0, main_fwhm_rad_s = 0;
  /// Connected emission band around the centre (everything above the void
  /// level), measured between its outermost half-maximum crossings.
  double band_low_omega = 0, band_high_omega = 0;
  double flat_bandwidth_nm = 0, flat_bandwidth_rad_s = 0;
  double fractional_bandwidth = 0;
  std::vector<SatellitePair> satellites;  ///< ordered from the centre outwards
  std::optional<double> inner_satellite_bandwidth_nm;
  std::optional<double> outer_satellite_bandwidth_nm;
  bool voids = false;  ///< intensity falls below the void level between main mode and satellites
  bool satellites_truncated = false;
};

namespace detail {

/// Interpolated crossing of `level` between samples k and k+1.
inline double crossing(const std::vector<double>& w, const std::vector<double>& y, std::size_t k, double level) {
  const double t = (level - y[k]) / (y[k + 1] - y[k]);
  return w[k] + t * (w[k + 1] - w[k]);
}

struct Run {
  std::size_t first, last;  // inclusive sample range at or above the level
};

inline std::vector<Run> runs_above(const std::vector<double>& y, double level) {
  std::vector<Run> out;
  std::size_t k = 0;
  while (k < y.size()) {
    if (y[k] >= level) {
      std::size_t e = k;
      while (e + 1 < y.size() && y[e + 1] >= level) ++e;
      out.push_back({k, e});
      k = e + 1;
    } else {
      ++k;
    }
  }
  return out;
}

inline double run_low_edge(const SinglesSpectrum& s, const Run& r, double level) {
  return r.first == 0 ? s.omega.front() : crossing(s.omega, s.intensity, r.first - 1, level);
}
inline double run_high_edge(const SinglesSpectrum& s, const Run& r, double level) {
  return r.last + 1 == s.omega.size() ? s.omega.back() : crossing(s.omega, s.intensity, r.last, level);
}

}  // namespace detail

inline BandwidthReport bandwidth_report(const SinglesSpectrum& s, const BandwidthOptions& opt = {}) {
  const auto& w = s.omega;
  const auto& y = s.intensity;
  if (w.size() < 3) throw ConfigError("bandwidth_report: spectrum too short");
  BandwidthReport r;
  r.center_omega = 0.5 * (s.pump.omega1 + s.pump.omega2);
  if (r.center_omega < w.front() || r.center_omega > w.back()) {
    throw DomainError("bandwidth_report: spectrum grid does not contain the pump centre");
  }
  const auto c_idx = static_cast<std::size_t>(std::lower_bound(w.begin(), w.end(), r.center_omega) - w.begin());
  auto edge_text = [&](bool low) {
    std::ostringstream os;
    os << "bandwidth_report: half-maximum crossing not inside the grid; the " << (low ? "low" : "high")
       << "-frequency edge " << (low ? w.front() : w.back()) << " rad/s ("
       << um_from_omega(low ? w.front() : w.back()) << " um) truncates the spectrum";
    return os.str();
  };

  const auto half_runs = detail::runs_above(y, opt.half_level);
  // main mode: the half-max run containing (or nearest to) the centre
  std::size_t main = half_runs.size();
  std::size_t best_gap = std::numeric_limits<std::size_t>::max();
  for (std::size_t k = 0; k < half_runs.size(); ++k) {
    const auto& run = half_runs[k];
    const std::size_t gap = c_idx < run.first ? run.first - c_idx : (c_idx > run.last ? c_idx - run.last : 0);
    if (gap < best_gap) { best_gap = gap; main = k; }
  }
  if (main == half_runs.size()) throw NumericError("bandwidth_report: no emission above half maximum");
  const auto& m = half_runs[main];
  if (m.first == 0) throw TruncatedSpectrumError(edge_text(true));
  if (m.last + 1 == w.size()) throw TruncatedSpectrumError(edge_text(false));
  if (m.last - m.first + 1 < opt.min_main_samples) {
    std::ostringstream os;
    os << "bandwidth_report: main mode spans " << (m.last - m.first + 1) << " samples; at least "
       << opt.min_main_samples << " are needed";
    throw ResolutionError(os.str());
  }
  r.main_low_omega = detail::run_low_edge(s, m, opt.half_level);
  r.main_high_omega = detail::run_high_edge(s, m, opt.half_level);
  r.main_fwhm_rad_s = r.main_high_omega - r.main_low_omega;
  r.main_fwhm_nm = span_nm(r.main_low_omega, r.main_high_omega);

  // emission band bounded by voids
  std::size_t lo = m.first, hi = m.last;
  while (lo > 0 && y[lo - 1] >= opt.void_level) --lo;
  while (hi + 1 < w.size() && y[hi + 1] >= opt.void_level) ++hi;
  std::size_t blo = m.first, bhi = m.last;
  for (std::size_t k = 0; k < half_runs.size(); ++k) {
    const auto& run = half_runs[k];
    if (run.first >= lo && run.last <= hi) {
      blo = std::min(blo, run.first);
      bhi = std::max(bhi, run.last);
    }
  }
  r.band_low_omega = detail::run_low_edge(s, {blo, bhi}, opt.half_level);
  r.band_high_omega = detail::run_high_edge(s, {blo, bhi}, opt.half_level);
  r.flat_bandwidth_rad_s = r.band_high_omega - r.band_low_omega;
  r.flat_bandwidth_nm = span_nm(r.band_low_omega, r.band_high_omega);
  r.fractional_bandwidth = r.flat_bandwidth_rad_s / r.center_omega;

  // satellites: other half-max runs, paired across the centre
  std::vector<std::size_t> below, above;
  for (std::size_t k = 0; k < half_runs.size(); ++k) {
    if (k < main) below.push_back(k);
    if (k > main) above.push_back(k);
  }
  std::reverse(below.begin(), below.end());  // nearest first
  const std::size_t pairs = std::min(below.size(), above.size());
  for (std::size_t p = 0; p < pairs; ++p) {
    const auto& rl = half_runs[below[p]];
    const auto& rh = half_runs[above[p]];
    SatellitePair sp;
    auto peak_of = [&](const detail::Run& run) {
      std::size_t best = run.first;
      for (std::size_t k = run.first; k <= run.last; ++k) if (y[k] > y[best]) best = k;
      return w[best];
    };
    sp.low_peak_omega = peak_of(rl);
    sp.high_peak_omega = peak_of(rh);
    sp.low_edge_omega = detail::run_low_edge(s, rl, opt.half_level);
    sp.high_edge_omega = detail::run_high_edge(s, rh, opt.half_level);
    sp.truncated = rl.first == 0 || rh.last + 1 == w.size();
    sp.bandwidth_rad_s = sp.high_edge_omega - sp.low_edge_omega;
    sp.bandwidth_nm = span_nm(sp.low_edge_omega, sp.high_edge_omega);
    r.satellites_truncated = r.satellites_truncated || sp.truncated;
    r.satellites.push_back(sp);
  }
  if (!r.satellites.empty()) {
    r.inner_satellite_bandwidth_nm = r.satellites.front().bandwidth_nm;
    r.outer_satellite_bandwidth_nm = r.satellites.back().bandwidth_nm;
    const auto& first = r.satellites.front();
    for (std::size_t k = 0; k < w.size() && !r.voids; ++k) {
      const bool between = (w[k] > first.low_peak_omega && w[k] < r.main_low_omega) ||
                           (w[k] < first.high_peak_omega && w[k] > r.main_high_omega);
      if (between && y[k] < opt.void_level) r.voids = true;
    }
  }
  return r;
}

// --------------------------------------------------------- correlation time

struct CorrelationTime {
  double tau_s = 0;
  bool truncated = false;  ///< the transformed band touches the grid edge above 1% of peak
  double band_low_omega = 0, band_high_omega = 0;
};

struct CorrelationOptions {
  /// Only the connected emission band around the centre (above this level)
  /// is transformed; 0 transforms the whole grid.
  double void_level = 0.01;
  std::size_t padding = 8;
};

namespace detail {

/// |sum_k f_k exp(-i x_k t)|^2 by direct summation.
inline double dft_power(const std::vector<cplx>& f, const std::vector<double>& x, double t) {
  cplx acc{0, 0};
  for (std::size_t k = 0; k < f.size(); ++k) acc += f[k] * std::polar(1.0, -x[k] * t);
  return std::norm(acc);
}

}  // namespace detail

/// FWHM of |T(t)|^2, T the Fourier transform of the complex singles amplitude
/// over the difference frequency 2 omega - (omega1 + omega2).
inline CorrelationTime correlation_time(const SinglesSpectrum& s, const CorrelationOptions& opt = {}) {
  const auto& w = s.omega;
  const double h = grid_step(w);
  const double sum = s.pump.omega1 + s.pump.omega2;
  const double c = 0.5 * sum;
  CorrelationTime out;
  std::size_t lo = 0, hi = w.size() - 1;
  if (opt.void_level > 0) {
    std::size_t ci = static_cast<std::size_t>(std::lower_bound(w.begin(), w.end(), c) - w.begin());
    ci = std::min(ci, w.size() - 1);
    if (s.intensity[ci] < opt.void_level) throw NumericError("correlation_time: no emission at the pump centre");
    lo = hi = ci;
    while (lo > 0 && s.intensity[lo - 1] >= opt.void_level) --lo;
    while (hi + 1 < w.size() && s.intensity[hi + 1] >= opt.void_level) ++hi;
  }
  out.band_low_omega = w[lo];
  out.band_high_omega = w[hi];
  out.truncated = (lo == 0 && s.intensity.front() > 0.01) || (hi + 1 == w.size() && s.intensity.back() > 0.01);

  const std::size_t n = hi - lo + 1;
  std::vector<cplx> f(s.amplitude.begin() + std::ptrdiff_t(lo), s.amplitude.begin() + std::ptrdiff_t(hi) + 1);
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = 2.0 * w[lo + k] - sum;

  // coarse |T|^2 on a padded FFT grid
  std::size_t m = 1;
  while (m < opt.padding * n) m <<= 1;
  std::vector<cplx> buf(m, cplx{0, 0});
  std::copy(f.begin(), f.end(), buf.begin());
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan = fftw_plan_dft_1d(int(m), data, data, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  const double dx = 2.0 * h;
  const double dt = 2.0 * std::numbers::pi / (double(m) * dx);
  std::size_t peak = 0;
  for (std::size_t k = 0; k < m; ++k) if (std::norm(buf[k]) > std::norm(buf[peak])) peak = k;
  auto t_of = [&](std::size_t k) { return (k < m / 2 ? double(k) : double(k) - double(m)) * dt; };
  // refine peak and half-maximum crossings on the exact transform
  double tp = t_of(peak);
  {
    double a = tp - dt, b = tp + dt;
    for (int it = 0; it < 80; ++it) {
      const double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
      if (detail::dft_power(f, x, m1) < detail::dft_power(f, x, m2)) a = m1; else b = m2;
    }
    tp = 0.5 * (a + b);
  }
  const double pmax = detail::dft_power(f, x, tp);
  auto half_cross = [&](double dir) {
    double inner = tp, outer = tp;
    for (std::size_t k = 1; k < m / 2; ++k) {
      outer = tp + dir * double(k) * dt;
      if (detail::dft_power(f, x, outer) < 0.5 * pmax) break;
      inner = outer;
    }
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (inner + outer);
      if (detail::dft_power(f, x, mid) >= 0.5 * pmax) inner = mid; else outer = mid;
    }
    return 0.5 * (inner + outer);
  };
  out.tau_s = half_cross(1.0) - half_cross(-1.0);
  return out;
}

}  // namespace sfwm
