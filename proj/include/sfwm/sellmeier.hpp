#pragma once

#include <array>
#include <cmath>
#include <sstream>

#include "sfwm/errors.hpp"
#include "sfwm/units.hpp"

namespace sfwm {

/// Three-term Sellmeier dispersion formula n^2 = 1 + sum B_j l^2 / (l^2 - C_j),
/// with l in micrometres and C_j in um^2.
struct SellmeierModel {
  std::array<double, 3> strengths{};
  std::array<double, 3> resonances_um2{};
  double lambda_min_um = 0.0;
  double lambda_max_um = 0.0;

  bool operator==(const SellmeierModel&) const = default;

  /// Malitson's fused-silica coefficients.
  static SellmeierModel fused_silica() {
    return {{0.6961663, 0.4079426, 0.8974794},
            {0.0684043 * 0.0684043, 0.1162414 * 0.1162414, 9.896161 * 9.896161},
            0.21,
            3.71};
  }

  bool contains(double lambda_um) const {
    return lambda_um >= lambda_min_um && lambda_um <= lambda_max_um;
  }

  double omega_min() const { return omega_from_um(lambda_max_um); }
  double omega_max() const { return omega_from_um(lambda_min_um); }

  /// Unchecked evaluation; T is double or long double.
  template <class T>
  T index_unchecked(T lambda_um) const {
    const T l2 = lambda_um * lambda_um;
    T n2 = 1;
    for (std::size_t j = 0; j < 3; ++j) {
      n2 += T(strengths[j]) * l2 / (l2 - T(resonances_um2[j]));
    }
    return std::sqrt(n2);
  }

  /// Checks the coefficient set: ordered window, index real and above one.
  void validate() const {
    if (!(lambda_min_um > 0.0) || !(lambda_max_um > lambda_min_um)) {
      throw ConfigError("sellmeier: validity window must satisfy 0 < lambda_min_um < lambda_max_um");
    }
    for (double c : resonances_um2) {
      if (c >= lambda_min_um * lambda_min_um && c <= lambda_max_um * lambda_max_um) {
        throw ConfigError("sellmeier: a resonance lies inside the validity window");
      }
    }
    constexpr int kProbe = 64;
    for (int i = 0; i <= kProbe; ++i) {
      const double l = lambda_min_um + (lambda_max_um - lambda_min_um) * i / kProbe;
      const double l2 = l * l;
      double n2 = 1;
      for (std::size_t j = 0; j < 3; ++j) n2 += strengths[j] * l2 / (l2 - resonances_um2[j]);
      if (!(n2 > 1.0)) throw ConfigError("sellmeier: index not real and > 1 inside the window");
    }
  }
};

inline std::string window_text(const SellmeierModel& model) {
  std::ostringstream os;
  os << "[" << model.lambda_min_um << ", " << model.lambda_max_um << "] um";
  return os.str();
}

/// Refractive index of the core glass at a vacuum wavelength in micrometres.
inline double silica_index(double lambda_um, const SellmeierModel& model) {
  if (!model.contains(lambda_um)) {
    std::ostringstream os;
    os << "wavelength " << lambda_um << " um outside Sellmeier validity window "
       << window_text(model);
    throw DomainError(os.str());
  }
  return model.index_unchecked(lambda_um);
}

/// Effective-medium cladding index f * 1 + (1 - f) * n_s.
inline double cladding_index(double omega, double fill_fraction, const SellmeierModel& model) {
  if (fill_fraction < 0.0 || fill_fraction > 1.0) {
    throw DomainError("air-filling fraction must lie in [0, 1]");
  }
  const double ns = silica_index(um_from_omega(omega), model);
  return fill_fraction + (1.0 - fill_fraction) * ns;
}

}  // namespace sfwm
