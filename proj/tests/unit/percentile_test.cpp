#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "rnicsim/defense/percentile.hpp"

namespace rnicsim {
namespace {

TEST(Percentile, OneToHundred) {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  EXPECT_EQ(nearest_rank_percentile(v, 90), 90.0);
  EXPECT_EQ(nearest_rank_percentile(v, 10), 10.0);
  EXPECT_EQ(nearest_rank_percentile(v, 100), 100.0);
}

TEST(Percentile, ConstantSample) {
  const std::vector<double> v(37, 4.5);
  EXPECT_EQ(nearest_rank_percentile(v, 90), 4.5);
  EXPECT_EQ(nearest_rank_percentile(v, 10), 4.5);
}

TEST(Percentile, EmptyAndSingleton) {
  EXPECT_EQ(nearest_rank_percentile({}, 50), 0.0);
  EXPECT_EQ(nearest_rank_percentile({3.0}, 1), 3.0);
}

TEST(Percentile, SmallSampleRank) {
  // n = 5: p10 -> rank 1, p90 -> rank 5, p40 -> rank 2.
  const std::vector<double> v{50, 10, 40, 20, 30};
  EXPECT_EQ(nearest_rank_percentile(v, 10), 10.0);
  EXPECT_EQ(nearest_rank_percentile(v, 90), 50.0);
  EXPECT_EQ(nearest_rank_percentile(v, 40), 20.0);
}

TEST(PercentileOracle, MatchesBruteForceOnRandomWindows) {
  const oracle::SuiteResult r = oracle::percentile_suite(100, 0x5eed);
  EXPECT_EQ(r.cases, 700);
  EXPECT_TRUE(r.ok()) << r.mismatches << " mismatches, first: " << r.first_failure;
}

}  // namespace
}  // namespace rnicsim
