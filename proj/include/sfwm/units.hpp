#pragma once

#include <numbers>

namespace sfwm {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Angular frequency (rad/s) of a vacuum wavelength given in micrometres.
inline constexpr double omega_from_um(double lambda_um) {
  return kTwoPi * kSpeedOfLight / (lambda_um * 1e-6);
}

/// Vacuum wavelength in micrometres of an angular frequency in rad/s.
inline constexpr double um_from_omega(double omega) {
  return kTwoPi * kSpeedOfLight / omega * 1e6;
}

/// Angular frequency width of a wavelength band (nm) centred at lambda_um.
inline constexpr double omega_width_from_nm(double lambda_um, double width_nm) {
  return kTwoPi * kSpeedOfLight * (width_nm * 1e-9) / ((lambda_um * 1e-6) * (lambda_um * 1e-6));
}

/// Wavelength span in nm between two angular frequencies (order independent).
inline constexpr double span_nm(double omega_a, double omega_b) {
  const double d = um_from_omega(omega_a) - um_from_omega(omega_b);
  return (d < 0 ? -d : d) * 1e3;
}

inline constexpr double omega_from_hz(double hz) { return kTwoPi * hz; }

}  // namespace sfwm
