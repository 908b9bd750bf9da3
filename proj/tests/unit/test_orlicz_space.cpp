#include <cmath>
#include <memory>
#include <sstream>

#include <gtest/gtest.h>

#include "bdglab/errors.hpp"
#include "bdglab/orlicz_space.hpp"
#include "support/oracles.hpp"

namespace bdglab {
namespace {

std::shared_ptr<const DiscreteMeasureSpace> four_atoms() {
  return std::make_shared<const DiscreteMeasureSpace>(std::vector<double>{1.0, 1.0, 2.0, 0.5});
}

TEST(MeasureSpace, Validation) {
  EXPECT_THROW(DiscreteMeasureSpace(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(DiscreteMeasureSpace(std::vector<double>{1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(DiscreteMeasureSpace({"a", "a"}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(DiscreteMeasureSpace({"a"}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_DOUBLE_EQ(four_atoms()->total_mass(), 4.5);
  EXPECT_EQ(four_atoms()->atoms()[3], "3");
}

TEST(OrliczVector, ModularByHand) {
  const auto sp = four_atoms();
  const OrliczVector f(sp, 2, {3, 4, 0, 0, 1, 0, 0, 2});
  const auto n = f.norms();
  EXPECT_DOUBLE_EQ(n[0], 5.0);
  EXPECT_DOUBLE_EQ(n[1], 0.0);
  // 1*25 + 0 + 2*1 + 0.5*4
  EXPECT_DOUBLE_EQ(modular(f, power_gauge(2.0)), 29.0);
}

TEST(OrliczVector, ShapeChecks) {
  const auto sp = four_atoms();
  EXPECT_THROW(OrliczVector(sp, 2, {1.0}), std::invalid_argument);
  EXPECT_THROW(OrliczVector(sp, 1, {1.0, NAN, 0.0, 0.0}), std::invalid_argument);
  const auto a = OrliczVector::zeros(sp, 2);
  const auto b = OrliczVector::zeros(sp, 1);
  EXPECT_THROW(a + b, std::invalid_argument);
}

TEST(Luxemburg, PowerGaugeIsWeightedLp) {
  const auto sp = four_atoms();
  for (double p : {1.5, 2.0, 3.0}) {
    for (std::uint64_t k = 0; k < 16; ++k) {
      const auto f = random_orlicz_vector(sp, 3, 99, k);
      const auto n = f.norms();
      const double lp = oracle::weighted_lp(n, sp->weights(), p);
      EXPECT_NEAR(luxemburg_norm(f, power_gauge(p)) / lp, 1.0, 1e-12);
      EXPECT_NEAR(luxemburg_norm(f, power_gauge(p)) / std::pow(modular(f, power_gauge(p)), 1.0 / p), 1.0, 1e-12);
    }
  }
}

TEST(Luxemburg, MatchesRootFinderForNonPowerGauges) {
  const auto sp = four_atoms();
  for (const auto& g : {lambda_alpha_gauge(2.0), power_log_gauge(2.0), lambda_alpha_gauge(1.0)}) {
    for (std::uint64_t k = 0; k < 8; ++k) {
      const auto f = random_orlicz_vector(sp, 2, 5, k, -2.0, 2.0);
      const auto n = f.norms();
      const double ref = oracle::luxemburg_root(n, sp->weights(), [&](double t) { return g(t); });
      EXPECT_NEAR(luxemburg_norm(f, g) / ref, 1.0, 1e-10) << g.name();
      // The returned point has modular at most 1.
      EXPECT_LE(modular(f.scaled(1.0 / luxemburg_norm(f, g)), g), 1.0 + 1e-12);
    }
  }
}

TEST(Luxemburg, ZeroAndBoundedGauge) {
  const auto sp = four_atoms();
  EXPECT_EQ(luxemburg_norm(OrliczVector::zeros(sp, 2), power_gauge(2.0)), 0.0);
  const auto light = std::make_shared<const DiscreteMeasureSpace>(std::vector<double>{0.1, 0.2});
  const OrliczVector f(light, 1, {1.0, 2.0});
  EXPECT_THROW(luxemburg_norm(f, lambda_alpha_gauge(0.0)), BracketExhausted);
}

TEST(Luxemburg, Homogeneous) {
  const auto sp = four_atoms();
  const auto g = lambda_alpha_gauge(2.0);
  const auto f = random_orlicz_vector(sp, 2, 1, 0);
  EXPECT_NEAR(luxemburg_norm(f.scaled(-3.0), g) / luxemburg_norm(f, g), 3.0, 1e-11);
}

TEST(NormRelations, HoldForA0Gauges) {
  const auto sp = four_atoms();
  for (const auto& g : {power_gauge(2.0), power_gauge(1.5), lambda_alpha_gauge(2.0)}) {
    const auto rep = verify_norm_relations(sp, g, 32, 11);
    EXPECT_TRUE(rep.holds()) << g.name() << " upper=" << rep.upper_margin << " lower=" << rep.lower_margin
                             << " gamma=" << rep.gamma_hat << " alpha=" << rep.alpha;
  }
}

TEST(OrliczVector, RandomVectorsAreReproducible) {
  const auto sp = four_atoms();
  EXPECT_EQ(random_orlicz_vector(sp, 3, 4, 9).values(), random_orlicz_vector(sp, 3, 4, 9).values());
  EXPECT_NE(random_orlicz_vector(sp, 3, 4, 9).values(), random_orlicz_vector(sp, 3, 4, 10).values());
}

TEST(OrliczVector, CsvRoundTrip) {
  const auto sp = four_atoms();
  const auto f = random_orlicz_vector(sp, 2, 3, 1);
  std::stringstream ss;
  write_vector_csv(ss, f);
  const auto g = read_vector_csv(ss, sp);
  EXPECT_EQ(f.values(), g.values());
  std::stringstream bad("atom,coord,value\n");
  EXPECT_THROW(read_vector_csv(bad, sp), std::invalid_argument);
}

}  // namespace
}  // namespace bdglab
