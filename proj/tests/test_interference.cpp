#include <gtest/gtest.h>

#include "sfwm/design.hpp"
#include "sfwm/interference.hpp"
#include "support.hpp"

using namespace sfwm;
using sfwm::test::fiber;

namespace {

struct Setup {
  DispersionProfile profile = fiber(0.8658, 0.4);
  MultiLinePumpSpec spec;
  MultiLineDecomposition d;

  Setup() {
    const double wz = profile.require_zero_dispersion_frequency();
    spec.omega_dp = wz;
    spec.omega_ndp1 = omega_from_um(0.7904);
    spec.omega_ndp2 = 2 * wz - spec.omega_ndp1;
    spec.band_width = omega_width_from_nm(um_from_omega(wz), 0.5);
    d = decompose_multiline(spec, profile, 0.25);
  }
};

const Setup& setup() {
  static const Setup s;
  return s;
}

double flux(double theta) {
  const auto& s = setup();
  return integrated_flux(s.d, multiline_amplitude(s.d, theta));
}

double l2(const std::vector<cplx>& a) {
  double acc = 0;
  for (const auto& v : a) acc += std::norm(v);
  return std::sqrt(acc);
}

}  // namespace

TEST(MultiLine, SpecValidation) {
  MultiLinePumpSpec s = MultiLinePumpSpec::from_wavelengths(0.79, 0.81, 0.83, 0.5, 0.0);
  EXPECT_THROW(s.validate(), ConfigError);  // not symmetric in frequency
  s.omega_ndp2 = 2 * s.omega_dp - s.omega_ndp1;
  EXPECT_NO_THROW(s.validate());
  s.band_width = s.omega_dp - s.omega_ndp2;
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(MultiLine, PumpEnergyIndependentOfPhase) {
  MultiLinePumpSpec s = MultiLinePumpSpec::from_wavelengths(0.79, 0.81, 0.83, 0.5, 0.0);
  s.omega_ndp2 = 2 * s.omega_dp - s.omega_ndp1;
  const double e0 = s.envelope().energy();
  for (double th : {0.3, 1.0, 2.5}) {
    s.theta = th;
    EXPECT_NEAR(s.envelope().energy(), e0, 1e-12 * e0);
  }
}

TEST(MultiLine, UnresolvedBandRejected) {
  const auto& s = setup();
  FluxOptions o;
  o.quadrature.points_per_band = 4;
  EXPECT_THROW(decompose_multiline(s.spec, s.profile, 0.25, o), ResolutionError);
}

TEST(Interference, CosineSquaredLaw) {
  const double f0 = flux(0.0);
  double rms = 0;
  const int n = 9;
  for (int k = 0; k < n; ++k) {
    const double th = std::numbers::pi * k / (n - 1);
    rms += std::pow(flux(th) / f0 - std::pow(std::cos(th), 2), 2);
  }
  EXPECT_LT(std::sqrt(rms / n), 1e-3);
  EXPECT_LT(flux(std::numbers::pi / 2) / f0, 1e-4);
  EXPECT_NEAR(flux(std::numbers::pi / 4) / f0, 0.5, 1e-3);
}

TEST(Interference, PeriodPi) {
  for (double th : {0.2, 0.9, 1.4}) {
    EXPECT_NEAR(flux(th + std::numbers::pi), flux(th), 1e-9 * flux(0.0));
  }
}

TEST(Interference, EqualRatePathways) {
  const auto& s = setup();
  const double dp = integrated_flux(s.d, multiline_amplitude(s.d, 0.0, PathwaySelection::dp_only));
  const double ndp = integrated_flux(s.d, multiline_amplitude(s.d, 0.0, PathwaySelection::ndp_only));
  EXPECT_NEAR(dp / ndp, 1.0, 1e-3);
  EXPECT_NEAR(flux(0.0) / dp, 4.0, 4e-3);
}

TEST(Interference, AmplitudeFollowsCosineTimesDpShape) {
  const auto& s = setup();
  const auto fdp = multiline_amplitude(s.d, 0.0, PathwaySelection::dp_only);
  const double ref = l2(multiline_amplitude(s.d, 0.0));
  // residual group-delay phase between the pathways across one band
  const double wz = s.spec.omega_dp;
  const double dk1 = s.profile.k_derivative(s.spec.omega_ndp1, 1) + s.profile.k_derivative(s.spec.omega_ndp2, 1) -
                     2 * s.profile.k_derivative(wz, 1);
  const double phase = 0.5 * 0.25 * std::abs(dk1) * s.spec.band_width;
  for (double th : {0.0, 0.5, 1.2, 2.0}) {
    const auto f = multiline_amplitude(s.d, th);
    // DP pathway carries 2 e^{2 i theta} I, the NDP pair 2 I: sum = 2 e^{i theta} cos(theta) (2 I)
    const cplx factor = 2.0 * std::polar(1.0, th) * std::cos(th);
    std::vector<cplx> diff(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) diff[k] = std::abs(f[k]) - std::abs(factor * fdp[k]);
    EXPECT_LT(l2(diff) / ref, 1e-3 + std::abs(std::sin(th)) * phase) << th;
  }
}

TEST(Interference, FluxTableMetadata) {
  const auto& s = setup();
  const auto t = flux_vs_phase(s.spec, {0.0, std::numbers::pi / 2}, s.profile, 0.25);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].flux_norm, 1.0);
  EXPECT_LT(t.signal_window_lo, s.spec.omega_dp);
  EXPECT_GT(t.signal_window_hi, s.spec.omega_dp);
  EXPECT_NEAR(0.5 * (t.sum_window_lo + t.sum_window_hi), 2 * s.spec.omega_dp, 1e-9 * s.spec.omega_dp);
  EXPECT_LT(t.same_band_fraction, 1e-3);
  EXPECT_LT(t.mixed_band_fraction, 1e-3);
}

TEST(Interference, JsaMultilineOnSmallGrid) {
  const auto& s = setup();
  const double wz = s.spec.omega_dp;
  const auto ws = symmetric_grid(wz, 0.05 * wz, 21);
  const auto j = jsa_multiline(s.spec, ws, ws, s.profile, 0.25);
  EXPECT_NEAR(j.norm(), 1.0, 1e-9);
  EXPECT_LE((j.amplitude - j.amplitude.transpose()).norm(), 1e-9 * j.amplitude.norm());
}
