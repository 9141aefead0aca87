#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rnicsim/rnic/lru_cache.hpp"

namespace rnicsim {
namespace {

TEST(LruCache, RepeatIsHit) {
  LruCache c(4);
  EXPECT_FALSE(c.lookup(10));
  EXPECT_TRUE(c.lookup(10));
  EXPECT_EQ(c.hits(), 1u);
  EXPECT_EQ(c.misses(), 1u);
}

TEST(LruCache, EvictsLeastRecentlyUsed) {
  LruCache c(2);
  c.lookup(1);
  c.lookup(2);
  c.lookup(1);  // 2 is now LRU
  c.lookup(3);
  EXPECT_TRUE(c.contains(1));
  EXPECT_FALSE(c.contains(2));
  EXPECT_EQ(c.evictions(), 1u);
  EXPECT_EQ(c.keys_mru_order(), (std::vector<std::uint64_t>{3, 1}));
}

TEST(LruCache, CyclicScanOverTwiceCapacityAlwaysMisses) {
  constexpr std::size_t kCap = 64;
  LruCache c(kCap);
  oracle::BruteLru ref(kCap);
  for (int pass = 0; pass < 5; ++pass) {
    for (std::uint64_t k = 0; k < 2 * kCap; ++k) {
      const bool hit = c.lookup(k);
      EXPECT_EQ(hit, ref.lookup(k));
      EXPECT_FALSE(hit);
    }
  }
}

TEST(LruCache, CycleOfNineOverCapacityEightAlwaysMisses) {
  LruCache c(8);
  for (int i = 0; i < 9 * 20; ++i) EXPECT_FALSE(c.lookup(static_cast<std::uint64_t>(i % 9)));
}

TEST(LruCache, WorkingSetWithinCapacityOnlyCompulsoryMisses) {
  LruCache c(16);
  for (int pass = 0; pass < 10; ++pass) {
    for (std::uint64_t k = 0; k < 16; ++k) c.lookup(k);
  }
  EXPECT_EQ(c.misses(), 16u);
  EXPECT_EQ(c.hits(), 16u * 9);
}

TEST(LruCache, RepeatedLookupCountsRestAsHits) {
  LruCache c(4);
  EXPECT_FALSE(c.lookup_repeated(5, 10));
  EXPECT_EQ(c.misses(), 1u);
  EXPECT_EQ(c.hits(), 9u);
  EXPECT_TRUE(c.lookup_repeated(5, 1));
}

TEST(LruCache, EraseFreesSlot) {
  LruCache c(2);
  c.lookup(1);
  c.lookup(2);
  c.erase(1);
  c.lookup(3);
  EXPECT_EQ(c.evictions(), 0u);
  EXPECT_TRUE(c.contains(2));
}

TEST(LruCache, ResidentNeverExceedsCapacity) {
  LruCache c(8);
  for (std::uint64_t k = 0; k < 1000; ++k) {
    c.lookup(k * 7919 % 37);
    ASSERT_LE(c.resident(), 8u);
    ASSERT_EQ(c.hits() + c.misses(), c.lookups());
  }
}

TEST(LruCacheOracle, MatchesBruteForceOnRandomTraces) {
  const oracle::SuiteResult r = oracle::lru_suite(100, 100000, 0x1ea5e);
  EXPECT_EQ(r.cases, 100);
  EXPECT_TRUE(r.ok()) << r.mismatches << " mismatches, first: " << r.first_failure;
}

}  // namespace
}  // namespace rnicsim
