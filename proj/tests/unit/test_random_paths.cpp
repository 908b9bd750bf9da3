#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "bdglab/paths.hpp"
#include "bdglab/random.hpp"
#include "bdglab/stats.hpp"

namespace bdglab {
namespace {

// Known-answer vectors of the reference Philox4x32-10.
TEST(Philox, KnownAnswers) {
  using A = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32(A{0, 0, 0, 0}, 0), (A{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(philox4x32(A{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, ~0ull),
            (A{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(philox4x32(A{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, 0x299f31d0a4093822ull),
            (A{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(CounterRng, AddressedStreams) {
  CounterRng a(7, 3, 1), b(7, 3, 1), c(7, 3, 2);
  for (int i = 0; i < 10; ++i) {
    const double x = a.normal();
    EXPECT_EQ(x, b.normal());
    EXPECT_NE(x, c.normal());
  }
  EXPECT_NE(derive_key(1, "x"), derive_key(1, "y"));
  EXPECT_NE(derive_key(1, "x"), derive_key(2, "x"));
}

TEST(CounterRng, Moments) {
  CounterRng r(derive_key(1, "moments"), 0, 0);
  ScalarMoments u, z;
  for (int i = 0; i < 200000; ++i) {
    const double x = r.uniform();
    ASSERT_GT(x, 0.0);
    ASSERT_LE(x, 1.0);
    u.add(x);
    z.add(r.normal());
  }
  EXPECT_NEAR(u.mean(), 0.5, 4 * std::sqrt(1.0 / 12 / 200000));
  EXPECT_NEAR(z.mean(), 0.0, 4 * std::sqrt(1.0 / 200000));
  EXPECT_NEAR(z.variance(), 1.0, 4 * std::sqrt(2.0 / 200000));
}

TEST(PathGrid, IndexOf) {
  const PathGrid g(2.0, 8);
  EXPECT_EQ(g.index_of(0.5), 2u);
  EXPECT_EQ(g.index_of(2.0), 8u);
  EXPECT_THROW(g.index_of(0.3), std::invalid_argument);
  EXPECT_THROW(g.index_of(2.5), std::invalid_argument);
}

TEST(Bundle, ReproducibleAndCoarsenable) {
  const PathGrid fine(1.0, 64);
  const auto a = simulate_bundle(5, "t", 3, 2, fine);
  const auto b = simulate_bundle(5, "t", 3, 2, fine);
  EXPECT_EQ(a.samples(), b.samples());
  EXPECT_EQ(a.at(0, 0), 0.0);
  EXPECT_EQ(a.at(1, 0), 0.0);
  const auto c = a.coarsen(4);
  EXPECT_EQ(c.grid().steps(), 16u);
  for (std::size_t k = 0; k <= 16; ++k) EXPECT_EQ(c.at(1, k), a.at(1, 4 * k));
  EXPECT_THROW(a.coarsen(5), std::invalid_argument);
  EXPECT_DOUBLE_EQ(a.scaled(2.0).at(0, 10), 2.0 * a.at(0, 10));
  EXPECT_THROW(simulate_bundle(5, "t", 0, 0, fine), std::invalid_argument);
}

TEST(Paths, Functionals) {
  const PathGrid g(1.0, 4);
  const std::vector<double> path{0.0, 1.0, -2.0, -1.0, 0.5};
  const auto f = path_functionals(path, g);
  EXPECT_EQ(f.running_sup, (std::vector<double>{0, 1, 2, 2, 2}));
  EXPECT_DOUBLE_EQ(f.quadratic_variation.back(), 1 + 9 + 1 + 2.25);
  EXPECT_THROW(path_functionals(std::vector<double>{0.0}, g), std::invalid_argument);
}

TEST(Paths, HittingTimes) {
  const std::vector<double> x{0.0, 0.5, 1.0, 1.5};
  EXPECT_EQ(hitting_time(x, 1.0, HitMode::weak), 2u);
  EXPECT_EQ(hitting_time(x, 1.0, HitMode::strict), 3u);
  EXPECT_EQ(hitting_time(x, 5.0, HitMode::weak), 3u);
}

TEST(Paths, StoppingTimes) {
  const PathGrid g(2.0, 8);
  const std::vector<double> m{0, 0.2, 0.4, 1.2, 0.3, 0, 0, 0, 0};
  StoppingTimeSpec det;
  det.horizon = 1.0;
  EXPECT_EQ(resolve_stopping_time(det, m, g), 4u);
  StoppingTimeSpec hit{StoppingTimeSpec::Kind::first_hit_sup, 1.0, HitMode::weak, 0.5};
  EXPECT_EQ(resolve_stopping_time(hit, m, g), 2u);  // capped at 0.5
  hit.horizon = 0.0;
  EXPECT_EQ(resolve_stopping_time(hit, m, g), 3u);
  EXPECT_EQ(parse_stop_kind(to_string(StoppingTimeSpec::Kind::norm_threshold)),
            StoppingTimeSpec::Kind::norm_threshold);
}

TEST(Paths, BundleCsv) {
  const auto b = simulate_bundle(1, "csv", 0, 1, PathGrid(1.0, 2));
  std::stringstream ss;
  write_bundle_csv(ss, b, true);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "replicate,coordinate,k,value");
}

}  // namespace
}  // namespace bdglab
