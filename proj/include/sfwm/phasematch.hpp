#pragma once

#include <array>
#include <cmath>
#include <sstream>

#include "sfwm/dispersion.hpp"
#include "sfwm/errors.hpp"
#include "sfwm/units.hpp"

namespace sfwm {

/// Nonlinear parameter used throughout when none is given: 70 /W/km.
inline constexpr double kDefaultGamma = 70e-3;

/// Two narrowband pumps. sigma is the Gaussian envelope width in rad/s and
/// only matters for finite-bandwidth joint amplitudes.
struct PumpConfig {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double sigma = kTwoPi * 50e6;
  double power1_w = 0.0;
  double power2_w = 0.0;
  double gamma1 = kDefaultGamma;
  double gamma2 = kDefaultGamma;

  static PumpConfig degenerate(double omega, double power_w = 0.0, double gamma = kDefaultGamma) {
    return {omega, omega, kTwoPi * 50e6, power_w, power_w, gamma, gamma};
  }
  static PumpConfig pair(double w1, double w2, double power_w = 0.0, double gamma = kDefaultGamma) {
    return {w1, w2, kTwoPi * 50e6, power_w, power_w, gamma, gamma};
  }

  bool is_degenerate() const { return std::abs(omega1 - omega2) <= 1e-12 * std::max(omega1, omega2); }

  /// Self/cross-phase-modulation shift gamma1 P1 + gamma2 P2 (1/m).
  double nonlinear_shift() const { return gamma1 * power1_w + gamma2 * power2_w; }

  PumpConfig swapped() const { return {omega2, omega1, sigma, power2_w, power1_w, gamma2, gamma1}; }
  PumpConfig with_power(double p1, double p2) const {
    PumpConfig c = *this;
    c.power1_w = p1;
    c.power2_w = p2;
    return c;
  }

  void validate() const {
    if (!(omega1 > 0 && omega2 > 0)) throw ConfigError("pump: frequencies must be > 0");
    if (sigma < 0 || power1_w < 0 || power2_w < 0 || gamma1 < 0 || gamma2 < 0) {
      throw ConfigError("pump: bandwidth, powers and nonlinear parameters must be >= 0");
    }
  }
};

/// Offsets from the zero-dispersion frequency.
struct Detunings {
  double s = 0, i = 0, p1 = 0, p2 = 0;

  static Detunings from(double ws, double wi, const PumpConfig& pump, double omega_zd) {
    return {ws - omega_zd, wi - omega_zd, pump.omega1 - omega_zd, pump.omega2 - omega_zd};
  }
  double plus() const { return s + i; }
  double minus() const { return s - i; }
  double pump_plus() const { return p1 + p2; }
  double pump_minus() const { return p1 - p2; }
};

/// delta k_n = k^(n)(Omega+) + k^(n)(Omega-) - 2 k^(n)(omega_zd), n = 0..4,
/// with Omega+- = omega_zd +- (omega1 - omega2) / 2.
struct TaylorCoefficients {
  double omega_zd = 0;
  double omega_plus = 0;
  double omega_minus = 0;
  std::array<double, 5> dk{};
  double k3 = 0;
  double k4 = 0;
};

inline void require_frequency(const DispersionProfile& profile, double w, const char* what) {
  profile.require(w, what);
}

/// Phase mismatch for monochromatic pumps, 1/m.
inline double delta_k_cw(double ws, double wi, const PumpConfig& pump, const DispersionProfile& profile) {
  const double sum = ws + wi;
  const double diff = pump.omega1 - pump.omega2;
  const double a = 0.5 * (sum + diff);
  const double b = 0.5 * (sum - diff);
  require_frequency(profile, ws, "signal frequency");
  require_frequency(profile, wi, "idler frequency");
  require_frequency(profile, a, "pump argument");
  require_frequency(profile, b, "pump argument");
  return (profile.k(a) + profile.k(b)) - (profile.k(ws) + profile.k(wi)) - pump.nonlinear_shift();
}

/// delta_k_cw restricted to the energy-conservation line.
inline double delta_k_sing(double w, const PumpConfig& pump, const DispersionProfile& profile) {
  const double w1 = pump.omega1, w2 = pump.omega2;
  const double wc = w1 + w2 - w;
  require_frequency(profile, w, "frequency");
  require_frequency(profile, wc, "conjugate frequency");
  require_frequency(profile, w1, "pump frequency");
  require_frequency(profile, w2, "pump frequency");
  return (profile.k(w1) + profile.k(w2)) - (profile.k(w) + profile.k(wc)) - pump.nonlinear_shift();
}

inline TaylorCoefficients taylor_coefficients(const PumpConfig& pump, const DispersionProfile& profile,
                                              double omega_zd) {
  TaylorCoefficients t;
  t.omega_zd = omega_zd;
  const double half = 0.5 * (pump.omega1 - pump.omega2);
  t.omega_plus = omega_zd + half;
  t.omega_minus = omega_zd - half;
  for (int n = 0; n <= 4; ++n) {
    const double kz = profile.k_derivative(omega_zd, n);
    const double kp = profile.k_derivative(t.omega_plus, n);
    const double km = profile.k_derivative(t.omega_minus, n);
    t.dk[n] = (kp + km) - 2.0 * kz;
    if (n == 3) t.k3 = kz;
    if (n == 4) t.k4 = kz;
  }
  return t;
}

inline TaylorCoefficients taylor_coefficients(const PumpConfig& pump, const DispersionProfile& profile) {
  return taylor_coefficients(pump, profile, profile.require_zero_dispersion_frequency());
}

/// Fourth-order expansion of delta_k_cw about (omega_zd, omega_zd) in
/// dplus = delta_s + delta_i and dminus = delta_s - delta_i.
inline double delta_k_taylor4(double dplus, double dminus, const TaylorCoefficients& c, const PumpConfig& pump) {
  const double p2 = dplus * dplus, m2 = dminus * dminus;
  double v = -pump.nonlinear_shift() + c.dk[0];
  v += 0.5 * c.dk[1] * dplus;
  v += c.dk[2] * p2 / 8.0;
  v += (c.dk[3] * p2 * dplus - 6.0 * c.k3 * dplus * m2) / 48.0;
  v += (c.dk[4] * p2 * p2 - 2.0 * c.k4 * (6.0 * p2 + m2) * m2) / 384.0;
  return v;
}

/// Curvature |k4 / (12 k3)| of the degenerate-pump non-trivial branch at the
/// origin, in (dminus, dplus) coordinates (units s/rad).
inline double contour_curvature_at_origin(const TaylorCoefficients& c) {
  if (c.k3 == 0.0) throw NumericError("contour curvature: k3 vanishes, curvature is singular");
  return std::abs(c.k4 / (12.0 * c.k3));
}

/// True when the branch bends toward negative dplus.
inline bool concave_toward_negative_plus(const TaylorCoefficients& c) { return c.k4 / c.k3 > 0; }

inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace sfwm
