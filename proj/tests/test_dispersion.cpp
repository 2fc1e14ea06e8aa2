#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "sfwm/chebyshev.hpp"
#include "sfwm/dispersion.hpp"
#include "support.hpp"

using namespace sfwm;
using sfwm::test::fiber;
using sfwm::test::rel;

TEST(Sellmeier, SodiumDLine) {
  EXPECT_NEAR(silica_index(0.5893, SellmeierModel::fused_silica()), 1.4584, 1e-4);
}

TEST(Sellmeier, RejectsOutsideWindow) {
  const auto m = SellmeierModel::fused_silica();
  EXPECT_THROW(silica_index(0.2, m), DomainError);
  EXPECT_THROW(silica_index(3.8, m), DomainError);
  EXPECT_NO_THROW(silica_index(3.7, m));
}

TEST(Cladding, LimitsAndMean) {
  const auto m = SellmeierModel::fused_silica();
  const double w = omega_from_um(1.0);
  const double ns = silica_index(1.0, m);
  EXPECT_DOUBLE_EQ(cladding_index(w, 0.0, m), ns);
  EXPECT_DOUBLE_EQ(cladding_index(w, 1.0, m), 1.0);
  EXPECT_NEAR(cladding_index(w, 0.5, m), 0.5 * (1.0 + ns), 1e-15);
}

TEST(Chebyshev, ReproducesPolynomialAndDerivative) {
  auto f = [](long double x) { return 3 * x * x * x - 2 * x + 0.5L; };
  const auto s = ChebyshevSeries<long double>::fit(f, -2.0L, 3.0L, 12, 5);
  const auto d = s.derivative();
  for (long double x : {-1.5L, 0.0L, 0.7L, 2.9L}) {
    EXPECT_NEAR(double(s(x)), double(f(x)), 1e-12);
    EXPECT_NEAR(double(d(x)), double(9 * x * x - 2), 1e-11);
  }
}

TEST(ModeSolver, IndexBracketedBetweenCladdingAndCore) {
  const auto p = fiber(0.7, 0.9);
  const auto m = SellmeierModel::fused_silica();
  for (double lam : {0.4, 0.6335, 1.0, 2.0, 3.0}) {
    const double w = omega_from_um(lam);
    const double n = static_cast<double>(p.n_eff_exact(w));
    EXPECT_GT(n, cladding_index(w, 0.9, m)) << lam;
    EXPECT_LT(n, silica_index(lam, m)) << lam;
    EXPECT_NEAR(p.n_eff(w), n, 1e-12);
  }
}

TEST(ModeSolver, ScalarModelAlsoBracketed) {
  DispersionOptions o;
  o.mode_model = ModeModel::scalar_lp01;
  DispersionProfile p(SellmeierModel::fused_silica(), {0.7, 0.9, 0.25}, o);
  const double w = omega_from_um(1.0);
  const double n = p.n_eff(w);
  EXPECT_GT(n, cladding_index(w, 0.9, SellmeierModel::fused_silica()));
  EXPECT_LT(n, silica_index(1.0, SellmeierModel::fused_silica()));
}

TEST(ModeSolver, ZeroFillIsBulkSilica) {
  DispersionOptions o;
  o.enforce_model_range = false;
  DispersionProfile p(SellmeierModel::fused_silica(), {1.0, 0.0, 0.25}, o);
  for (double lam : {0.5, 1.0, 2.5}) {
    EXPECT_NEAR(p.n_eff(omega_from_um(lam)), silica_index(lam, SellmeierModel::fused_silica()), 1e-12);
  }
}

TEST(ModeSolver, SmallFillApproachesBulk) {
  const double w = omega_from_um(1.2);
  const double ns = silica_index(1.2, SellmeierModel::fused_silica());
  double prev = 1.0;
  for (double f : {0.4, 0.2, 0.1}) {
    const double gap = ns - fiber(1.0, f).n_eff(w);
    EXPECT_GT(gap, 0.0);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
}

TEST(Dispersion, OutOfWindowFrequencyIsDomainError) {
  const auto p = fiber(1.0, 0.5);
  EXPECT_THROW(p.k_derivative(omega_from_um(0.2), 2), DomainError);
  EXPECT_THROW(p.k_derivative(omega_from_um(3.70), 2), DomainError);
}

TEST(Dispersion, FillOutsideModelRangeRejected) {
  EXPECT_THROW(fiber(1.0, 0.95), ConfigError);
}

class DerivativeOracle : public ::testing::TestWithParam<double> {};

TEST_P(DerivativeOracle, MatchesRichardsonUpToThirdOrder) {
  const auto p = fiber(1.8162, 0.1);
  const long double w = omega_from_um(GetParam());
  auto k = [&](long double x) { return p.k_exact(x); };
  const auto d = p.k_derivatives(double(w));
  for (int n = 1; n <= 3; ++n) {
    const long double h = w * (n == 1 ? 2e-3L : n == 2 ? 5e-3L : 1e-2L);
    const double fd = double(sfwm::test::richardson(k, w, h, n));
    EXPECT_LT(rel(d[std::size_t(n)], fd), 1e-5) << "order " << n;
    EXPECT_NEAR(p.k_derivative(double(w), n), d[std::size_t(n)], 1e-12 * std::abs(d[std::size_t(n)]));
  }
}

TEST_P(DerivativeOracle, HighOrdersMatchIndependentPolynomialFit) {
  const auto p = fiber(1.8162, 0.1);
  const double w = omega_from_um(GetParam());
  // monomial least squares on uniform nodes over a wider window
  const int nodes = 161, degree = 22;
  const long double half = 0.10L * w;
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> a(nodes, degree + 1);
  Eigen::Matrix<long double, Eigen::Dynamic, 1> b(nodes);
  for (int i = 0; i < nodes; ++i) {
    const long double t = -1 + 2.0L * i / (nodes - 1);
    long double pw = 1;
    for (int j = 0; j <= degree; ++j, pw *= t) a(i, j) = pw;
    b(i) = p.k_exact(w + half * t);
  }
  const Eigen::Matrix<long double, Eigen::Dynamic, 1> c = a.colPivHouseholderQr().solve(b);
  const auto d = p.k_derivatives(w);
  long double fact = 1;
  for (int n = 1; n <= 6; ++n) {
    fact *= n;
    const double oracle = double(c(n) * fact / std::pow(half, (long double)n));
    if (n >= 4) EXPECT_LT(rel(d[std::size_t(n)], oracle), 1e-3) << "order " << n;
  }
}

INSTANTIATE_TEST_SUITE_P(Wavelengths, DerivativeOracle, ::testing::Values(0.8, 1.0, 1.6, 2.2));

TEST(ZeroDispersion, KnownFibers) {
  struct Case { double r, f, lam; };
  for (const auto& c : {Case{0.7, 0.9, 0.6335}, Case{1.8162, 0.1, 1.2076}, Case{1.8402, 0.1, 1.1987},
                        Case{0.8658, 0.4, 0.8089}}) {
    const auto p = fiber(c.r, c.f);
    const double wz = p.require_zero_dispersion_frequency();
    EXPECT_LT(rel(um_from_omega(wz), c.lam), 0.015) << c.r << " " << c.f;
    EXPECT_LT(std::abs(p.k_derivative(wz, 2)), 1e-8 * std::abs(p.k_derivative(omega_from_um(1.0), 2)));
  }
}

TEST(ZeroDispersion, PrimaryRootIsHighestFrequency) {
  const auto p = fiber(0.7, 0.9);
  const auto roots = p.zero_dispersion_frequencies();
  ASSERT_GE(roots.size(), 2u);
  EXPECT_TRUE(std::is_sorted(roots.begin(), roots.end()));
  EXPECT_EQ(*p.zero_dispersion_frequency(), roots.back());
  EXPECT_NEAR(um_from_omega(roots.front()), 1.65, 0.05);
}

TEST(ZeroDispersion, AnomalousBetweenRoots) {
  const auto p = fiber(0.7, 0.9);
  EXPECT_LT(p.k_derivative(omega_from_um(1.0), 2), 0.0);
  EXPECT_GT(p.k_derivative(omega_from_um(0.55), 2), 0.0);
}
