#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "bdglab/monte_carlo.hpp"
#include "bdglab/random.hpp"
#include "bdglab/stats.hpp"

namespace bdglab {
namespace {

TEST(Moments, MatchTwoPassFormulas) {
  const std::vector<double> x{1.0, 4.0, 2.5, -3.0, 7.0};
  ScalarMoments m;
  for (double v : x) m.add(v);
  double mean = 0.0;
  for (double v : x) mean += v / x.size();
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  EXPECT_NEAR(m.mean(), mean, 1e-14);
  EXPECT_NEAR(m.variance(), ss / (x.size() - 1), 1e-13);
  EXPECT_NEAR(m.estimate().std_error, std::sqrt(ss / (x.size() - 1) / x.size()), 1e-14);
}

TEST(Moments, MergeEqualsConcatenation) {
  ScalarMoments a, b, all;
  for (int i = 0; i < 50; ++i) {
    const double v = std::sin(i);
    (i < 20 ? a : b).add(v);
    all.add(v);
  }
  a.merge(b);
  EXPECT_EQ(a.count(), all.count());
  EXPECT_NEAR(a.mean(), all.mean(), 1e-15);
  EXPECT_NEAR(a.variance(), all.variance(), 1e-14);
}

TEST(PairMoments, LinearCombinationStderr) {
  PairMoments p;
  for (int i = 0; i < 100; ++i) p.add(std::cos(i), 2.0 * std::cos(i) + 0.1 * std::sin(i));
  const auto d = p.linear(1.0, -1.0);
  const double var = p.var_x() + p.var_y() - 2.0 * p.cov();
  EXPECT_NEAR(d.std_error, std::sqrt(var / 100.0), 1e-14);
  EXPECT_NEAR(d.mean, p.x().mean - p.y().mean, 1e-15);
}

TEST(RatioReport, VerdictRule) {
  PairMoments p;
  // lhs = y + noise, bound 1: lhs - rhs has mean 0.01 and stderr ~0.1/sqrt(n).
  for (int i = 0; i < 400; ++i) p.add(1.01 + 0.1 * ((i % 2) ? 1 : -1), 1.0);
  const auto r = make_ratio_report("e", "k=v", "a", p, 1.0, 8);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(verdict_holds(r));
  EXPECT_NEAR(r.combined_stderr, 0.1 / std::sqrt(400.0) * std::sqrt(400.0 / 399.0), 1e-12);
  const auto tight = make_ratio_report("e", "k=v", "a", p, 0.9, 8);
  EXPECT_FALSE(tight.pass);
  const auto info = make_ratio_report("e", "k=v", "a", p, std::nullopt, 8);
  EXPECT_TRUE(info.pass);
}

TEST(RatioReport, DegenerateAndExact) {
  PairMoments zero;
  for (int i = 0; i < 10; ++i) zero.add(0.0, 0.0);
  const auto r = make_ratio_report("e", "", "a", zero, 1.0, 4);
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(std::isnan(r.ratio));
  EXPECT_TRUE(make_exact_report("e", "", "a", 1.0, 1.0, 1.0).pass);
  EXPECT_FALSE(make_exact_report("e", "", "a", 1.0 + 1e-12, 1.0, 1.0).pass);
}

struct Sum {
  ScalarMoments m;
  void merge(const Sum& o) { m.merge(o.m); }
};

TEST(Replicates, IndependentOfWorkerCount) {
  const auto body = [](Sum& s, std::size_t r) { s.m.add(CounterRng(9, r, 0).normal()); };
  setenv("BDGLAB_THREADS", "1", 1);
  const Sum one = run_replicates(5000, Sum{}, body, 64);
  setenv("BDGLAB_THREADS", "4", 1);
  const Sum four = run_replicates(5000, Sum{}, body, 64);
  unsetenv("BDGLAB_THREADS");
  EXPECT_EQ(one.m.count(), 5000u);
  EXPECT_EQ(one.m.mean(), four.m.mean());
  EXPECT_EQ(one.m.variance(), four.m.variance());
}

TEST(Replicates, PropagatesExceptions) {
  const auto body = [](Sum&, std::size_t r) {
    if (r == 77) throw std::runtime_error("boom");
  };
  EXPECT_THROW(run_replicates(200, Sum{}, body, 16), std::runtime_error);
}

}  // namespace
}  // namespace bdglab
