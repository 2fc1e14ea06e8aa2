#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "sfwm/dispersion.hpp"
#include "sfwm/twophoton.hpp"

namespace sfwm::test {

inline DispersionProfile fiber(double r_um, double f, double length_m = 0.25) {
  return DispersionProfile(SellmeierModel::fused_silica(), FiberGeometry{r_um, f, length_m});
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// delta_k_cw from directly solved k in long double, no cache.
inline double exact_delta_k(double ws, double wi, const PumpConfig& pump, const DispersionProfile& p) {
  const long double sum = (long double)ws + wi, diff = (long double)pump.omega1 - pump.omega2;
  const long double a = 0.5L * (sum + diff), b = 0.5L * (sum - diff);
  return double(p.k_exact(a) + p.k_exact(b) - p.k_exact(ws) - p.k_exact(wi)) - pump.nonlinear_shift();
}

/// Number of runs above `level` with every sample inside [lo, hi].
inline int count_peaks(const SinglesSpectrum& s, double level, double lo, double hi) {
  int n = 0;
  bool in = false;
  for (std::size_t k = 0; k < s.omega.size(); ++k) {
    const bool on = s.omega[k] >= lo && s.omega[k] <= hi && s.intensity[k] >= level;
    if (on && !in) ++n;
    in = on;
  }
  return n;
}

/// Least squares y = sum_j c_j x^p_j with x scaled to unit range.
inline std::vector<double> fit_powers(const std::vector<double>& x, const std::vector<double>& y,
                                      const std::vector<int>& powers) {
  double xs = 0;
  for (double v : x) xs = std::max(xs, std::abs(v));
  Eigen::MatrixXd a(long(x.size()), long(powers.size()));
  Eigen::VectorXd b(long(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < powers.size(); ++j) a(long(i), long(j)) = std::pow(x[i] / xs, powers[j]);
    b(long(i)) = y[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  std::vector<double> out(powers.size());
  for (std::size_t j = 0; j < powers.size(); ++j) out[j] = c(long(j)) / std::pow(xs, powers[j]);
  return out;
}

/// Derivative of order n at x from Richardson-extrapolated central differences.
template <class F>
long double richardson(F&& f, long double x, long double h, int n) {
  auto central = [&](long double step) -> long double {
    switch (n) {
      case 1: return (f(x + step) - f(x - step)) / (2 * step);
      case 2: return (f(x + step) - 2 * f(x) + f(x - step)) / (step * step);
      default:
        return (f(x + 2 * step) - 2 * f(x + step) + 2 * f(x - step) - f(x - 2 * step)) / (2 * step * step * step);
    }
  };
  // two Richardson levels on an h, h/2, h/4 sequence (error series in h^2)
  const long double d0 = central(h), d1 = central(h / 2), d2 = central(h / 4);
  const long double e0 = (4 * d1 - d0) / 3, e1 = (4 * d2 - d1) / 3;
  return (16 * e1 - e0) / 15;
}

}  // namespace sfwm::test
