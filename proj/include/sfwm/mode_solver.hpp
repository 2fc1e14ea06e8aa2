#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string_view>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/tools/roots.hpp>

#include "sfwm/errors.hpp"

namespace sfwm {

/// Eigenvalue equation used for the fundamental mode of the step-index core.
enum class ModeModel {
  vector_he11,  ///< exact hybrid HE11 characteristic equation
  scalar_lp01,  ///< weakly-guiding LP01 approximation
};

inline std::string_view to_string(ModeModel m) {
  return m == ModeModel::vector_he11 ? "vector_he11" : "scalar_lp01";
}

struct ModeSolution {
  long double n_eff = 0;
  long double u = 0;  ///< normalised transverse core parameter
  long double w = 0;  ///< normalised cladding decay parameter
  long double v = 0;  ///< normalised frequency
};

namespace detail {

inline constexpr long double kFirstJ0Zero = 2.404825557695772768621631879326454643L;

// J1'(U) / (U J1(U))
inline long double j_ratio(long double u) {
  using boost::math::cyl_bessel_j;
  return cyl_bessel_j(0, u) / (u * cyl_bessel_j(1, u)) - 1.0L / (u * u);
}

// K1'(W) / (W K1(W))
inline long double k_ratio(long double w) {
  using boost::math::cyl_bessel_k;
  return -cyl_bessel_k(0, w) / (w * cyl_bessel_k(1, w)) - 1.0L / (w * w);
}

}  // namespace detail

/// Solves for the fundamental guided mode of a step-index core of radius
/// `radius_um` at vacuum wavelength `lambda_um`.
///
/// Index-matched cores (n_core == n_clad) return the core index, which is the
/// vanishing-contrast limit of the guided solution.
inline ModeSolution solve_fundamental_mode(long double lambda_um, long double n_core,
                                           long double n_clad, long double radius_um,
                                           ModeModel model) {
  using std::sqrt;
  if (!(n_core >= n_clad)) {
    std::ostringstream os;
    os << "mode solve: cladding index " << static_cast<double>(n_clad)
       << " exceeds core index " << static_cast<double>(n_core);
    throw ModeSolveError(os.str());
  }
  const long double k0 = 2.0L * 3.141592653589793238462643383279502884L / lambda_um;
  const long double v = k0 * radius_um * sqrt(n_core * n_core - n_clad * n_clad);
  if (v == 0.0L) return {n_core, 0.0L, 0.0L, 0.0L};
  if (!(v > 1e-9L)) throw ModeSolveError("mode solve: normalised frequency too small to bracket");

  const long double clad_ratio2 = (n_clad / n_core) * (n_clad / n_core);
  const long double kr_n1 = k0 * radius_um * n_core;

  auto characteristic = [&](long double u) -> long double {
    const long double w = sqrt(v * v - u * u);
    if (model == ModeModel::scalar_lp01) {
      using boost::math::cyl_bessel_j;
      using boost::math::cyl_bessel_k;
      return u * cyl_bessel_j(1, u) / cyl_bessel_j(0, u) -
             w * cyl_bessel_k(1, w) / cyl_bessel_k(0, w);
    }
    const long double jr = detail::j_ratio(u);
    const long double kr = detail::k_ratio(w);
    const long double beta_norm2 = 1.0L - (u / kr_n1) * (u / kr_n1);
    const long double s = 1.0L / (u * u) + 1.0L / (w * w);
    return (jr + kr) * (jr + clad_ratio2 * kr) - beta_norm2 * s * s;
  };

  const long double u_max = std::min(v, detail::kFirstJ0Zero) * (1.0L - 1e-12L);
  const long double u_min = u_max * 1e-3L;
  constexpr int kScan = 48;
  long double a = u_min;
  long double fa = characteristic(a);
  for (int i = 1; i <= kScan; ++i) {
    const long double b = u_min + (u_max - u_min) * i / kScan;
    const long double fb = characteristic(b);
    if (std::isfinite(fa) && std::isfinite(fb) && std::signbit(fa) != std::signbit(fb)) {
      std::uintmax_t iters = 200;
      boost::math::tools::eps_tolerance<long double> tol(60);
      const auto [lo, hi] = boost::math::tools::toms748_solve(characteristic, a, b, fa, fb, tol, iters);
      const long double u = 0.5L * (lo + hi);
      const long double w = sqrt(v * v - u * u);
      const long double q = u / (k0 * radius_um);
      return {sqrt(n_core * n_core - q * q), u, w, v};
    }
    a = b;
    fa = fb;
  }
  std::ostringstream os;
  os << "mode solve: no fundamental-mode root bracketed at lambda=" << static_cast<double>(lambda_um)
     << " um (V=" << static_cast<double>(v) << ")";
  throw ModeSolveError(os.str());
}

}  // namespace sfwm
