#pragma once

#include <sstream>

#include "sfwm/errors.hpp"

namespace sfwm {

/// A point in the photonic-crystal-fibre design space.
struct FiberGeometry {
  double core_radius_um = 1.0;
  double air_filling_fraction = 0.5;
  double length_m = 0.25;

  bool operator==(const FiberGeometry&) const = default;

  /// Range over which the effective-medium step-index picture is trusted.
  static constexpr double kMinFill = 0.1;
  static constexpr double kMaxFill = 0.9;

  bool in_model_range() const {
    return air_filling_fraction >= kMinFill && air_filling_fraction <= kMaxFill;
  }

  /// Throws ConfigError unless r > 0, L > 0 and f in [0, 1); with `strict`
  /// the fill fraction must also sit inside the model range.
  void validate(bool strict = true) const {
    if (!(core_radius_um > 0.0)) throw ConfigError("fiber: core radius must be > 0");
    if (!(length_m > 0.0)) throw ConfigError("fiber: length must be > 0");
    if (!(air_filling_fraction >= 0.0 && air_filling_fraction < 1.0)) {
      throw ConfigError("fiber: air-filling fraction must lie in [0, 1)");
    }
    if (strict && !in_model_range()) {
      std::ostringstream os;
      os << "fiber: air-filling fraction " << air_filling_fraction << " outside model range ["
         << kMinFill << ", " << kMaxFill << "]";
      throw ConfigError(os.str());
    }
  }
};

}  // namespace sfwm
