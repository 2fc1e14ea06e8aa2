#include <gtest/gtest.h>

#include <boost/math/tools/roots.hpp>

#include "sfwm/twophoton.hpp"
#include "support.hpp"

using namespace sfwm;
using sfwm::test::fiber;
using sfwm::test::rel;

namespace {

JointSpectrum from_function(const std::vector<double>& x, const std::vector<double>& y,
                            const std::function<cplx(double, double)>& f) {
  JointSpectrum j;
  j.omega_s = x;
  j.omega_i = y;
  j.amplitude.resize(long(x.size()), long(y.size()));
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b) j.amplitude(long(a), long(b)) = f(x[a], y[b]);
  normalize(j);
  return j;
}

/// Half-maximum point of sinc^2.
double sinc2_half_point() {
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t it = 100;
  const auto r = boost::math::tools::toms748_solve([](double x) { return std::pow(std::sin(x) / x, 2) - 0.5; }, 1.0,
                                                   2.0, tol, it);
  return 0.5 * (r.first + r.second);
}

SinglesSpectrum rectangle(double center, double width, std::size_t n, double span) {
  SinglesSpectrum s;
  s.omega = symmetric_grid(center, span, n);
  s.pump = PumpConfig::degenerate(center);
  for (double w : s.omega) {
    const bool on = std::abs(w - center) <= 0.5 * width;
    s.amplitude.push_back(on ? 1.0 : 0.0);
    s.intensity.push_back(on ? 1.0 : 0.0);
  }
  return s;
}

}  // namespace

TEST(Grids, LinspaceAndSymmetric) {
  const auto g = linspace(1.0, 2.0, 11);
  EXPECT_EQ(g.front(), 1.0);
  EXPECT_EQ(g.back(), 2.0);
  EXPECT_NEAR(grid_step(g), 0.1, 1e-15);
  const auto s = symmetric_grid(5.0, 1.0, 5);
  EXPECT_EQ(s[2], 5.0);
  EXPECT_DOUBLE_EQ(s[0] + s[4], 10.0);
}

TEST(Schmidt, SeparableStateHasUnitK) {
  const auto x = linspace(-5, 5, 120);
  const auto j = from_function(x, x, [](double a, double b) { return std::exp(-a * a / 2) * std::exp(-b * b / 3); });
  EXPECT_NEAR(schmidt_number(j).K, 1.0, 1e-9);
}

TEST(Schmidt, GaussianClosedForm) {
  const auto x = linspace(-12, 12, 300);
  for (double q : {0.3, 0.6, 1.0}) {
    const double p = 3.0;
    const auto j = from_function(x, x, [&](double a, double b) {
      const double u = (a + b) / std::sqrt(2.0), v = (a - b) / std::sqrt(2.0);
      return std::exp(-u * u / (2 * p * p) - v * v / (2 * q * q));
    });
    const double closed = (p * p + q * q) / (2 * p * q);
    EXPECT_LT(rel(schmidt_number(j).K, closed), 0.01) << q;
  }
}

TEST(Schmidt, GramRouteAgreesWithSvd) {
  const auto x = linspace(-12, 12, 200);
  const auto j = from_function(x, x, [](double a, double b) {
    const double u = (a + b) / std::sqrt(2.0), v = (a - b) / std::sqrt(2.0);
    return std::exp(-u * u / 18 - v * v / 0.5) * std::polar(1.0, 0.1 * a * b);
  });
  const auto svd = schmidt_number(j);
  SchmidtOptions o;
  o.svd_max_entries = 10;
  const auto gram = schmidt_number(j, o);
  EXPECT_EQ(svd.method, "svd");
  EXPECT_NE(gram.method, "svd");
  EXPECT_LT(rel(gram.K, svd.K), 1e-9);
}

TEST(Schmidt, RejectsUnnormalised) {
  auto j = from_function(linspace(-1, 1, 10), linspace(-1, 1, 10), [](double, double) { return 1.0; });
  j.amplitude *= 2.0;
  EXPECT_THROW(schmidt_number(j), ContractError);
}

TEST(CorrelationTime, RectangleOracle) {
  const double width = 1e14;
  const auto s = rectangle(2e15, width, 20001, 4e14);
  // transform runs over 2 omega - sum, where the band spans 2 * width
  const double tau = 4.0 * sinc2_half_point() / (2.0 * width);
  CorrelationOptions o;
  o.void_level = 0;
  EXPECT_LT(rel(correlation_time(s, o).tau_s, tau), 0.01);
  EXPECT_LT(rel(correlation_time(s).tau_s, tau), 0.01);
}

TEST(Singles, MirrorSymmetry) {
  const auto p = fiber(1.8162, 0.1);
  const auto pump = PumpConfig::pair(omega_from_um(1.1), omega_from_um(1.3), 5.0);
  const double sum = pump.omega1 + pump.omega2;
  for (double lam : {0.8, 1.0, 1.17, 1.6}) {
    const double w = omega_from_um(lam);
    const cplx a = singles_amplitude(w, pump, p, 0.25), b = singles_amplitude(sum - w, pump, p, 0.25);
    EXPECT_LE(std::abs(a - b), 1e-9 * std::abs(a) + 1e-12);
  }
}

TEST(Singles, PeakCountsOnFigureFiber) {
  const auto p = fiber(0.7, 0.9, 0.01);
  const double second_zd = p.zero_dispersion_frequencies().front();
  {
    const auto pump = PumpConfig::degenerate(omega_from_um(0.6));
    ASSERT_GT(pump.omega1, p.require_zero_dispersion_frequency());
    const auto s = singles_spectrum(singles_grid(pump, p, (1 << 16) + 1), pump, p, 0.01);
    EXPECT_EQ(sfwm::test::count_peaks(s, 0.5, second_zd, 2 * pump.omega1 - second_zd), 3);
  }
  {
    const auto pump = PumpConfig::pair(omega_from_um(0.54), omega_from_um(0.70));
    const auto s = singles_spectrum(singles_grid(pump, p, (1 << 16) + 1), pump, p, 0.01);
    EXPECT_EQ(sfwm::test::count_peaks(s, 0.5, second_zd, pump.omega1 + pump.omega2 - second_zd), 4);
  }
  {
    // below omega_zd only the trivial branch remains
    const auto pump = PumpConfig::degenerate(omega_from_um(0.66));
    const auto s = singles_spectrum(singles_grid(pump, p, (1 << 16) + 1), pump, p, 0.01);
    EXPECT_EQ(sfwm::test::count_peaks(s, 0.5, second_zd, 2 * pump.omega1 - second_zd), 1);
  }
}

TEST(Bandwidth, SimpleTopHat) {
  const auto s = rectangle(2e15, 1e14, 4001, 4e14);
  SinglesSpectrum smooth = s;
  for (std::size_t k = 0; k < s.omega.size(); ++k) {
    const double x = (s.omega[k] - 2e15) / 5e13;
    smooth.intensity[k] = std::exp(-std::pow(x, 8));
    smooth.amplitude[k] = std::sqrt(smooth.intensity[k]);
  }
  const auto r = bandwidth_report(smooth);
  const double half = 5e13 * std::pow(std::log(2.0), 1.0 / 8);
  EXPECT_NEAR(r.main_fwhm_rad_s, 2 * half, 1e-3 * half);
  EXPECT_NEAR(r.main_fwhm_nm, span_nm(2e15 - half, 2e15 + half), 1e-2);
  EXPECT_TRUE(r.satellites.empty());
  EXPECT_FALSE(r.voids);
}

TEST(Bandwidth, TruncatedMainModeThrows) {
  auto s = rectangle(2e15, 1e14, 401, 4e13);
  EXPECT_THROW(bandwidth_report(s), TruncatedSpectrumError);
}

TEST(Jsa, GaussianPumpApproachesCwRidge) {
  // narrow pump and short fibre: the pump-frequency spread barely moves dk
  const auto p = fiber(1.8162, 0.1);
  const double wz = p.require_zero_dispersion_frequency();
  const double sigma = 1e10, length = 1e-3;
  PumpConfig pump = PumpConfig::degenerate(wz, 5.0);
  pump.sigma = sigma;
  const auto ws = symmetric_grid(wz, 40 * sigma, 161);
  const auto a = SpectralEnvelope::gaussian(wz, sigma);
  const auto g = jsa_general(ws, ws, a, a, pump, p, length);
  const auto c = jsa_cw(ws, ws, pump, p, length, std::sqrt(2.0) * sigma);
  const double diff = (g.amplitude.cwiseAbs() - c.amplitude.cwiseAbs()).norm() / c.amplitude.norm();
  EXPECT_LT(diff, 1e-3);
}

TEST(Jsa, SwapSymmetry) {
  const auto p = fiber(1.8162, 0.1);
  const auto pump = PumpConfig::pair(omega_from_um(1.15), omega_from_um(1.27), 5.0);
  const auto ws = linspace(omega_from_um(1.6), omega_from_um(0.95), 40);
  const auto j = jsa_cw(ws, ws, pump, p, 0.25);
  EXPECT_LE((j.amplitude - j.amplitude.transpose()).norm(), 1e-12 * j.amplitude.norm());
  EXPECT_NEAR(j.norm(), 1.0, 1e-12);
}

TEST(Jsa, UnderResolvedQuadratureRejected) {
  const auto p = fiber(1.8162, 0.1);
  const double wz = p.require_zero_dispersion_frequency();
  const auto g = linspace(wz * 0.9, wz * 1.1, 5);
  const auto a = SpectralEnvelope::gaussian(wz, 1e12);
  EXPECT_THROW(jsa_general(g, g, a, a, PumpConfig::degenerate(wz), p, 0.25, {4, 8.0}), ResolutionError);
}
