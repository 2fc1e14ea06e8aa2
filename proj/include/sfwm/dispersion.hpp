#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <vector>

#include "sfwm/chebyshev.hpp"
#include "sfwm/errors.hpp"
#include "sfwm/fiber.hpp"
#include "sfwm/mode_solver.hpp"
#include "sfwm/sellmeier.hpp"
#include "sfwm/units.hpp"

namespace sfwm {

struct DispersionOptions {
  ModeModel mode_model = ModeModel::vector_he11;
  /// The n_eff cache is a piecewise Chebyshev interpolant over log(omega):
  /// segments * nodes_per_segment mode solves in total.
  std::size_t cache_segments = 100;
  std::size_t cache_nodes_per_segment = 20;
  /// Local interpolant used for k^(n): half-width relative to omega, node
  /// count and least-squares degree.
  double derivative_half_width = 0.02;
  std::size_t derivative_nodes = 41;
  std::size_t derivative_degree = 12;
  /// Orders 4..6 use a wider interpolant, shrunk towards derivative_half_width
  /// near the edges of the validity window.
  double high_order_half_width = 0.12;
  std::size_t high_order_nodes = 121;
  std::size_t high_order_degree = 26;
  /// Zero-dispersion search: coarse scan density and bisection tolerance.
  std::size_t zd_scan_points = 400;
  double zd_relative_tolerance = 1e-10;
  /// Reject fill fractions outside [0.1, 0.9].
  bool enforce_model_range = true;

  bool operator==(const DispersionOptions&) const = default;
};

/// Fundamental-mode propagation constant k(omega) = n_eff(omega) omega / c of
/// an effective-medium step-index fibre, with derivatives and zero-dispersion
/// frequencies. Immutable after construction; the sample cache is filled once,
/// on first use, and is safe for concurrent readers.
class DispersionProfile {
 public:
  DispersionProfile(SellmeierModel sellmeier, FiberGeometry geometry, DispersionOptions options = {})
      : sellmeier_(sellmeier), geometry_(geometry), options_(options), cache_(std::make_shared<Cache>()) {
    sellmeier_.validate();
    geometry_.validate(options_.enforce_model_range);
    if (options_.derivative_nodes < options_.derivative_degree + 1) {
      throw ConfigError("dispersion: derivative_nodes must exceed derivative_degree");
    }
    if (options_.high_order_nodes < options_.high_order_degree + 1 ||
        options_.high_order_half_width < options_.derivative_half_width) {
      throw ConfigError("dispersion: high-order interpolant must be at least as wide as the base one");
    }
    if (options_.cache_segments == 0 || options_.cache_nodes_per_segment < 4) {
      throw ConfigError("dispersion: cache needs at least one segment of four nodes");
    }
  }

  const SellmeierModel& sellmeier() const { return sellmeier_; }
  const FiberGeometry& geometry() const { return geometry_; }
  const DispersionOptions& options() const { return options_; }

  double omega_min() const { return sellmeier_.omega_min(); }
  double omega_max() const { return sellmeier_.omega_max(); }
  bool contains(double omega) const { return omega >= omega_min() && omega <= omega_max(); }

  void require(double omega, const char* what = "frequency") const {
    if (!contains(omega)) {
      std::ostringstream os;
      os << what << " " << omega << " rad/s (" << um_from_omega(omega)
         << " um) outside dispersion validity window " << window_text(sellmeier_);
      throw DomainError(os.str());
    }
  }

  /// Direct mode solve, bypassing the cache.
  long double n_eff_exact(long double omega) const {
    require(static_cast<double>(omega));
    const long double lambda_um =
        2.0L * std::numbers::pi_v<long double> * kSpeedOfLight / omega * 1e6L;
    const long double ns = sellmeier_.index_unchecked(lambda_um);
    const long double f = geometry_.air_filling_fraction;
    const long double nclad = f + (1.0L - f) * ns;
    return solve_fundamental_mode(lambda_um, ns, nclad, geometry_.core_radius_um, options_.mode_model).n_eff;
  }

  long double k_exact(long double omega) const { return n_eff_exact(omega) * omega / kSpeedOfLight; }

  /// Cached effective index.
  double n_eff(double omega) const {
    require(omega);
    const auto& c = cache();
    return c.segments[segment_of(c, omega)](std::log(omega));
  }

  double k(double omega) const { return n_eff(omega) * omega / kSpeedOfLight; }

  /// d^n k / d omega^n from the cached interpolant, orders 0..3. Cheap, for
  /// scans and bracketing; k_derivative is the accurate route.
  double k_derivative_cached(double omega, int order) const {
    require(omega);
    if (order < 0 || order > 3) throw ContractError("k_derivative_cached: order must be 0..3");
    const auto& c = cache();
    const std::size_t s = segment_of(c, omega);
    // n(x) with x = log(omega): convert d/dx to d/domega by the chain rule.
    const double x = std::log(omega);
    double nd[4];
    nd[0] = c.segments[s](x);
    for (int j = 1; j <= order; ++j) nd[j] = c.derivs[s][j - 1](x);
    // g(x) = n(x) e^x / c;   k^(m) in omega from g's x-derivatives.
    double gx[4];
    for (int j = 0; j <= order; ++j) {
      double sum = 0, binom = 1;
      for (int i = 0; i <= j; ++i) {
        sum += binom * nd[i];
        binom = binom * (j - i) / (i + 1);
      }
      gx[j] = sum * omega / kSpeedOfLight;
    }
    switch (order) {
      case 0: return gx[0];
      case 1: return gx[1] / omega;
      case 2: return (gx[2] - gx[1]) / (omega * omega);
      default: return (gx[3] - 3 * gx[2] + 2 * gx[1]) / (omega * omega * omega);
    }
  }

  /// n-th frequency derivative of k (s^n/m), n in 0..6, from a least-squares
  /// Chebyshev interpolant of directly solved k over omega (1 +- half_width).
  double k_derivative(double omega, int order) const {
    if (order < 0 || order > 6) throw ContractError("k_derivative: order must be 0..6");
    if (order == 0) return static_cast<double>(k_exact(omega));
    auto series = order <= 3 ? local_fit(omega) : wide_fit(omega);
    for (int j = 0; j < order; ++j) series = series.derivative();
    return static_cast<double>(series(omega));
  }

 private:
  ChebyshevSeries<long double> wide_fit(double omega) const {
    const double base = options_.derivative_half_width;
    double h = std::min({options_.high_order_half_width, omega_max() / omega - 1.0, 1.0 - omega_min() / omega});
    h = std::max(h * (1 - 1e-9), base);
    const double t = options_.high_order_half_width > base
                         ? (h - base) / (options_.high_order_half_width - base)
                         : 1.0;
    const auto degree = static_cast<std::size_t>(std::lround(
        double(options_.derivative_degree) +
        t * (double(options_.high_order_degree) - double(options_.derivative_degree))));
    const auto nodes = std::max(options_.high_order_nodes, degree + 1);
    return local_fit(omega, h, nodes, degree);
  }

  ChebyshevSeries<long double> local_fit(double omega) const {
    return local_fit(omega, options_.derivative_half_width, options_.derivative_nodes, options_.derivative_degree);
  }

  ChebyshevSeries<long double> local_fit(double omega, long double h, std::size_t nodes, std::size_t degree) const {
    const long double lo = omega * (1.0L - h);
    const long double hi = omega * (1.0L + h);
    if (!contains(static_cast<double>(lo)) || !contains(static_cast<double>(hi))) {
      std::ostringstream os;
      os << "k_derivative: neighbourhood [" << um_from_omega(static_cast<double>(hi)) << ", "
         << um_from_omega(static_cast<double>(lo)) << "] um leaves validity window "
         << window_text(sellmeier_);
      throw DomainError(os.str());
    }
    return ChebyshevSeries<long double>::fit([this](long double w) { return k_exact(w); }, lo, hi, nodes,
                                             degree);
  }

 public:

  /// k^(0..6): orders 1..3 from the base interpolant, 4..6 from the wide one.
  std::array<double, 7> k_derivatives(double omega) const {
    std::array<double, 7> out{};
    out[0] = static_cast<double>(k_exact(omega));
    auto series = local_fit(omega);
    for (int j = 1; j <= 3; ++j) {
      series = series.derivative();
      out[std::size_t(j)] = static_cast<double>(series(omega));
    }
    auto wide = wide_fit(omega);
    for (int j = 1; j <= 6; ++j) {
      wide = wide.derivative();
      if (j >= 4) out[std::size_t(j)] = static_cast<double>(wide(omega));
    }
    return out;
  }

  /// Largest and smallest omega at which k_derivative is defined.
  double derivative_omega_min() const { return omega_min() / (1.0 - options_.derivative_half_width) * (1 + 1e-12); }
  double derivative_omega_max() const { return omega_max() / (1.0 + options_.derivative_half_width) * (1 - 1e-12); }

  /// All roots of k''(omega) = 0 in the window (ascending omega); empty when
  /// the group-velocity dispersion never changes sign.
  std::vector<double> zero_dispersion_frequencies() const {
    const double lo = std::log(derivative_omega_min());
    const double hi = std::log(derivative_omega_max());
    const std::size_t n = std::max<std::size_t>(options_.zd_scan_points, 8);
    std::vector<double> roots;
    double wa = std::exp(lo);
    double fa = k_derivative_cached(wa, 2);
    for (std::size_t i = 1; i <= n; ++i) {
      const double wb = std::exp(lo + (hi - lo) * double(i) / double(n));
      const double fb = k_derivative_cached(wb, 2);
      if (std::signbit(fa) != std::signbit(fb)) roots.push_back(refine_zero_dispersion(wa, wb));
      wa = wb;
      fa = fb;
    }
    return roots;
  }

  /// The highest-frequency zero-dispersion point, the one the design
  /// conditions are built around; absent when none exists.
  std::optional<double> zero_dispersion_frequency() const {
    const auto roots = zero_dispersion_frequencies();
    if (roots.empty()) return std::nullopt;
    return roots.back();
  }

  double require_zero_dispersion_frequency() const {
    const auto w = zero_dispersion_frequency();
    if (!w) {
      std::ostringstream os;
      os << "no zero-dispersion frequency for r=" << geometry_.core_radius_um
         << " um, f=" << geometry_.air_filling_fraction;
      throw DesignError(os.str());
    }
    return *w;
  }

 private:
  struct Cache {
    std::once_flag once;
    double log_lo = 0, log_hi = 0, step = 0;
    std::vector<ChebyshevSeries<double>> segments;
    std::vector<std::array<ChebyshevSeries<double>, 3>> derivs;
  };

  double refine_zero_dispersion(double a, double b) const {
    double fa = k_derivative(a, 2);
    double fb = k_derivative(b, 2);
    if (std::signbit(fa) == std::signbit(fb)) {
      // The cached scan saw a sign change the accurate derivative does not
      // confirm; fall back to the cached function for the bracket.
      fa = k_derivative_cached(a, 2);
      fb = k_derivative_cached(b, 2);
    }
    while ((b - a) > options_.zd_relative_tolerance * a) {
      const double m = 0.5 * (a + b);
      const double fm = k_derivative(m, 2);
      if (std::signbit(fm) == std::signbit(fa)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  }

  static std::size_t segment_of(const Cache& c, double omega) {
    const double x = (std::log(omega) - c.log_lo) / c.step;
    const auto n = c.segments.size();
    if (!(x > 0)) return 0;
    return std::min(static_cast<std::size_t>(x), n - 1);
  }

  const Cache& cache() const {
    std::call_once(cache_->once, [this] { build_cache(*cache_); });
    return *cache_;
  }

  void build_cache(Cache& c) const {
    c.log_lo = std::log(omega_min());
    c.log_hi = std::log(omega_max());
    const std::size_t ns = options_.cache_segments;
    const std::size_t nn = options_.cache_nodes_per_segment;
    c.step = (c.log_hi - c.log_lo) / double(ns);
    const auto t = chebyshev_nodes<double>(nn);
    c.segments.resize(ns);
    c.derivs.resize(ns);
    std::vector<double> vals(nn);
    for (std::size_t s = 0; s < ns; ++s) {
      const double lo = c.log_lo + c.step * double(s);
      const double hi = (s + 1 == ns) ? c.log_hi : lo + c.step;
      for (std::size_t k = 0; k < nn; ++k) {
        const double x = ChebyshevSeries<double>::map_from_unit(t[k], lo, hi);
        const double w = std::clamp(std::exp(x), omega_min(), omega_max());
        const double ne = static_cast<double>(n_eff_exact(w));
        const double ns_val = sellmeier_.index_unchecked(um_from_omega(w));
        const double nclad = geometry_.air_filling_fraction + (1 - geometry_.air_filling_fraction) * ns_val;
        if (geometry_.air_filling_fraction > 0 && !(ne > nclad && ne < ns_val)) {
          std::ostringstream os;
          os << "dispersion: n_eff=" << ne << " not inside (n_clad, n_core) = (" << nclad << ", " << ns_val
             << ") at " << um_from_omega(w) << " um";
          throw NumericError(os.str());
        }
        vals[k] = ne;
      }
      c.segments[s] = ChebyshevSeries<double>::from_node_samples(lo, hi, vals, nn - 1);
      c.derivs[s][0] = c.segments[s].derivative();
      c.derivs[s][1] = c.derivs[s][0].derivative();
      c.derivs[s][2] = c.derivs[s][1].derivative();
    }
  }

  SellmeierModel sellmeier_;
  FiberGeometry geometry_;
  DispersionOptions options_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace sfwm
