#include <cmath>

#include <gtest/gtest.h>

#include "bdglab/errors.hpp"
#include "bdglab/gauge_analysis.hpp"
#include "support/oracles.hpp"

namespace bdglab {
namespace {

constexpr auto numeric = TransformRoute::numeric;

oracle::Fn fn(const GrowthFunction& g) {
  return [g](double t) { return g(t); };
}

class PowerTransforms : public ::testing::TestWithParam<double> {};

TEST_P(PowerTransforms, NumericPhiMatchesScanAndClosedForm) {
  const double p = GetParam();
  const auto g = power_gauge(p);
  for (double s : {0.05, 0.5, 1.0, 3.0, 20.0}) {
    const double lib = phi_of(g, s, numeric);
    EXPECT_NEAR(lib / std::pow(s, p), 1.0, 1e-9) << "s=" << s;
    EXPECT_NEAR(lib / oracle::phi_scan(fn(g), s), 1.0, 1e-9) << "s=" << s;
  }
}

TEST_P(PowerTransforms, InversesMatchGeneralizedInverse) {
  const double p = GetParam();
  const auto g = power_gauge(p);
  const auto phi = [&](double s) { return phi_of(g, s, numeric); };
  for (double t : {0.01, 0.7, 2.0, 50.0}) {
    const auto inv = inverse_transforms(g, t, numeric);
    EXPECT_NEAR(inv.psi / oracle::generalized_inverse(phi, t), 1.0, 1e-8);
    EXPECT_NEAR(inv.psi / std::pow(t, 1.0 / p), 1.0, 1e-8);
    EXPECT_NEAR(inv.varphi / std::pow(t, 1.0 / p), 1.0, 1e-8);
  }
}

TEST_P(PowerTransforms, ComplementaryIsTheLegendreTransform) {
  const double p = GetParam();
  const auto g = power_gauge(p);
  const auto comp = complementary_gauge(g, numeric);
  for (double t : {0.05, 0.3, 1.0, 4.0, 30.0}) {
    EXPECT_NEAR(comp(t) / oracle::legendre(fn(g), t), 1.0, 1e-7) << "t=" << t;
    EXPECT_NEAR(comp(t) / oracle::power_complementary(p, t), 1.0, 1e-9) << "t=" << t;
  }
  const auto closed = complementary_gauge(g);
  EXPECT_NEAR(closed(2.0) / comp(2.0), 1.0, 1e-9);
}

TEST_P(PowerTransforms, KappaIsOneOverPMinusOne) {
  const double p = GetParam();
  const auto g = power_gauge(p);
  EXPECT_NEAR(oracle::kappa_ratio(fn(g), 3.0), 1.0 / (p - 1.0), 1e-9);
  const auto rep = classify_gauge(g);
  ASSERT_TRUE(rep.kappa_integral.has_value());
  EXPECT_NEAR(*rep.kappa_integral, 1.0 / (p - 1.0), 1e-6);
  EXPECT_TRUE(rep.is_A2());
}

INSTANTIATE_TEST_SUITE_P(P, PowerTransforms, ::testing::Values(1.5, 2.0, 3.0));

TEST(GaugeAnalysis, ComplementaryOfScaledPowerIsConjugateOverQ) {
  // t^p / p and t^q / q are a complementary pair.
  for (double p : {1.5, 2.0, 3.0}) {
    const auto g = power_gauge(p, 1.0 / p);
    const auto comp = complementary_gauge(g, numeric);
    const double q = oracle::conjugate_exponent(p);
    for (double t : {0.2, 1.0, 5.0}) EXPECT_NEAR(comp(t) / (std::pow(t, q) / q), 1.0, 1e-9);
  }
}

TEST(GaugeAnalysis, RightInverseMatchesScan) {
  for (const auto& g : {power_log_gauge(2.0), exp_minus_one_gauge(), power_gauge(3.0)}) {
    const auto a = [&](double s) { return g.right_derivative(s); };
    for (double u : {0.05, 0.4, 1.0, 3.0}) {
      const double scan = oracle::right_inverse_scan(a, u, 4.0, 400000);
      EXPECT_NEAR(right_inverse_derivative(g, u), scan, 4.0 / 400000 + 1e-12) << g.name() << " u=" << u;
    }
    EXPECT_EQ(right_inverse_derivative(g, 0.0), 0.0);
  }
}

TEST(GaugeAnalysis, YoungGapOnGrid) {
  const auto g = power_gauge(2.0, 0.5);
  const auto comp = complementary_gauge(g, numeric);
  for (double s : {0.1, 1.0, 7.0}) {
    EXPECT_NEAR(young_gap(g, comp, s, s), 0.0, 1e-9);
    EXPECT_GT(young_gap(g, comp, s, 2.0 * s), 0.0);
  }
}

TEST(GaugeAnalysis, ComplementaryNeedsAnNFunction) {
  EXPECT_THROW(complementary_gauge(power_gauge(1.0)), ClassPreconditionError);
  EXPECT_THROW(complementary_gauge(lambda_alpha_gauge(0.0)), ClassPreconditionError);
}

TEST(GaugeAnalysis, NFunctionProbe) {
  EXPECT_TRUE(probe_n_function(power_gauge(2.0)).ok());
  const auto lin = probe_n_function(power_gauge(1.0));
  EXPECT_TRUE(lin.convex);
  EXPECT_FALSE(lin.vanishes_at_zero);
  EXPECT_FALSE(lin.diagnostic.empty());
}

TEST(GaugeAnalysis, ClassifyLambdaFamily) {
  const auto l2 = classify_gauge(lambda_alpha_gauge(2.0));
  EXPECT_TRUE(l2.is_A0);
  EXPECT_TRUE(l2.is_A1);
  EXPECT_FALSE(l2.n_function.convex);
  EXPECT_TRUE(l2.is_A2_equivalent());
  ASSERT_TRUE(l2.rv_index.has_value());
  EXPECT_NEAR(*l2.rv_index, 2.0, 0.2);

  const auto l0 = classify_gauge(lambda_alpha_gauge(0.0));
  EXPECT_FALSE(l0.is_A1);

  const auto e = classify_gauge(exp_minus_one_gauge());
  EXPECT_FALSE(e.is_A0);
}

TEST(GaugeAnalysis, PhiRejectsNonPositive) {
  EXPECT_THROW(phi_of(power_gauge(2.0), 0.0), std::invalid_argument);
  EXPECT_THROW(phi_of(exp_minus_one_gauge(), 2.0, numeric), GaugeOverflow);
}

TEST(GaugeAnalysis, ClassifyRejectsNarrowProbe) {
  ProbeConfig cfg;
  cfg.t_min = 1.0;
  cfg.t_max = 10.0;
  EXPECT_THROW(classify_gauge(power_gauge(2.0), cfg), std::invalid_argument);
}

}  // namespace
}  // namespace bdglab
