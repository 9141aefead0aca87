#include <gtest/gtest.h>

#include <functional>

#include "oracles.hpp"
#include "rnicsim/rnic/errors.hpp"
#include "rnicsim/rnic/rnic.hpp"

namespace rnicsim {
namespace {

struct Bench {
  Rnic rnic;
  std::vector<Completion> done;
  SimTime now{};

  explicit Bench(RnicConfig c = {}) : rnic(c) {
    for (ContainerId id : {1u, 2u}) {
      rnic.register_container(id);
      rnic.set_completion_handler(id, [this](const Completion& c) { done.push_back(c); });
    }
  }

  void run(std::int64_t ticks) {
    for (std::int64_t i = 0; i < ticks; ++i, now += SimTime{1}) rnic.tx_schedule_cycle(now);
  }

  WorkRequest read(std::uint64_t page) const {
    WorkRequest wr;
    wr.verb = VerbKind::kRead;
    wr.payload_bytes = 64;
    wr.remote_page = page;
    wr.posted_at_us = now.us();
    return wr;
  }
};

TEST(Rnic, FirstCreateIsQpOneWithIcmMiss) {
  Bench b;
  EXPECT_EQ(b.rnic.create_qp(1, TransportMode::kRC), 1u);
  EXPECT_EQ(b.rnic.icm().misses(), 1u);
}

TEST(Rnic, CreateBeyondTableFails) {
  RnicConfig c;
  c.max_qps = 3;
  Bench b(c);
  for (int i = 0; i < 3; ++i) b.rnic.create_qp(1, TransportMode::kRC);
  EXPECT_THROW(b.rnic.create_qp(2, TransportMode::kUC), QpCapacityExhausted);
}

TEST(Rnic, BlockedCreationThrows) {
  Bench b;
  b.rnic.block_qp_creation(2, true);
  EXPECT_THROW(b.rnic.create_qp(2, TransportMode::kRC), QpCreationBlocked);
  EXPECT_NO_THROW(b.rnic.create_qp(1, TransportMode::kRC));
}

TEST(Rnic, TwentyFourCreatesOverSixteenIcmEntries) {
  RnicConfig c;
  c.icm_entries = 16;
  Bench b(c);
  oracle::BruteLru ref(16);
  std::uint64_t ref_misses = 0;
  for (int i = 0; i < 24; ++i) {
    const QpId q = b.rnic.create_qp(1, TransportMode::kRC);
    ref_misses += ref.lookup(q) ? 0 : 1;
  }
  EXPECT_EQ(b.rnic.icm().misses(), ref_misses);
  EXPECT_GE(b.rnic.icm().evictions(), 8u);
}

TEST(Rnic, CreateThenDestroyNetZero) {
  Bench b;
  const QpId q = b.rnic.create_qp(1, TransportMode::kRC);
  b.rnic.destroy_qp(q);
  EXPECT_EQ(b.rnic.qp_count(), 0u);
  EXPECT_FALSE(b.rnic.qp_info(q).has_value());
}

TEST(RnicDeathTest, DoubleDestroyIsFatal) {
  EXPECT_DEATH(
      {
        Bench b;
        const QpId q = b.rnic.create_qp(1, TransportMode::kRC);
        b.rnic.destroy_qp(q);
        b.rnic.destroy_qp(q);
      },
      "unknown qp_id");
}

TEST(Rnic, UcReadIsIllegal) {
  Bench b;
  const QpId q = b.rnic.create_qp(1, TransportMode::kUC);
  EXPECT_THROW(b.rnic.post_work_request(q, b.read(0)), IllegalVerbForMode);
}

TEST(Rnic, FullQueueRejectsPost) {
  RnicConfig c;
  c.max_outstanding_wqes = 4;
  Bench b(c);
  const QpId q = b.rnic.create_qp(1, TransportMode::kRC);
  for (int i = 0; i < 4; ++i) b.rnic.post_work_request(q, b.read(0));
  EXPECT_THROW(b.rnic.post_work_request(q, b.read(0)), QueueFull);
  EXPECT_EQ(b.rnic.post_batch(q, b.read(0), 10), 0u);
}

TEST(Rnic, AddressPresenceMustMatchVerb) {
  Bench b;
  const QpId q = b.rnic.create_qp(1, TransportMode::kRC);
  WorkRequest send;
  send.verb = VerbKind::kSend;
  send.payload_bytes = 64;
  send.remote_page = 3;
  EXPECT_THROW(b.rnic.post_work_request(q, send), InvalidWorkRequest);
  WorkRequest read = b.read(0);
  read.remote_page.reset();
  EXPECT_THROW(b.rnic.post_work_request(q, read), InvalidWorkRequest);
}

TEST(Rnic, NineQpsOverEightWqeEntriesAlwaysMiss) {
  RnicConfig c;
  c.wqe_entries = 8;
  Bench b(c);
  std::vector<QpId> qps;
  for (int i = 0; i < 9; ++i) qps.push_back(b.rnic.create_qp(1, TransportMode::kRC));
  for (int round = 0; round < 10; ++round) {
    for (QpId q : qps) b.rnic.post_work_request(q, b.read(0));
  }
  EXPECT_EQ(b.rnic.wqe_cache().hits(), 0u);
  EXPECT_EQ(b.rnic.wqe_cache().misses(), 90u);
}

TEST(Rnic, ReadLatencyWarmAndCold) {
  Bench b;
  const QpId q = b.rnic.create_qp(1, TransportMode::kRC);
  const RnicConfig& c = b.rnic.config();

  b.rnic.post_work_request(q, b.read(7));  // WQE and MTT cold
  b.run(50);
  b.rnic.post_work_request(q, b.read(8));  // MTT cold only
  b.run(50);
  b.rnic.post_work_request(q, b.read(8));  // all warm
  b.run(50);

  ASSERT_EQ(b.done.size(), 3u);
  EXPECT_NEAR(b.done[0].latency_sum_us,
              c.base_latency_us + c.wqe_miss_penalty_us + c.mtt_miss_penalty_us, 1e-9);
  EXPECT_NEAR(b.done[1].latency_sum_us, c.base_latency_us + c.mtt_miss_penalty_us, 1e-9);
  EXPECT_NEAR(b.done[2].latency_sum_us, 1.56, 1e-9);
}

TEST(Rnic, RepeatedTranslationHits) {
  Bench b;
  EXPECT_FALSE(b.rnic.lookup_translation(1, 42));
  EXPECT_TRUE(b.rnic.lookup_translation(1, 42));
  // Translations are per container.
  EXPECT_FALSE(b.rnic.lookup_translation(2, 42));
}

TEST(Rnic, BlockedQpGetsNoGrant) {
  Bench b;
  const QpId q = b.rnic.create_qp(1, TransportMode::kRC);
  b.rnic.post_batch(q, b.read(0), 100, 0);
  b.rnic.set_blocked(q, true);
  for (int i = 0; i < 100; ++i, b.now += SimTime{1}) {
    EXPECT_TRUE(b.rnic.tx_schedule_cycle(b.now).empty());
  }
  EXPECT_TRUE(b.done.empty());
  EXPECT_EQ(b.rnic.qp_info(q)->state, QpState::kBlocked);
  b.rnic.release(q);
  b.run(10);
  EXPECT_FALSE(b.done.empty());
}

// Keeps every listed QP saturated with identical WRITEs.
struct Saturator {
  Bench& b;
  std::vector<QpId> qps;
  std::map<ContainerId, double> bytes;

  void top_up() {
    WorkRequest wr;
    wr.verb = VerbKind::kWrite;
    wr.payload_bytes = 65536;
    wr.remote_page = 0;
    wr.posted_at_us = b.now.us();
    for (QpId q : qps) b.rnic.post_batch(q, wr, 256, 0);
  }

  void run(std::int64_t ticks) {
    for (std::int64_t i = 0; i < ticks; ++i, b.now += SimTime{1}) {
      if (i % 16 == 0) top_up();
      b.rnic.tx_schedule_cycle(b.now);
    }
    for (const auto& c : b.done) bytes[c.owner] += static_cast<double>(c.count * c.payload_bytes_each);
    b.done.clear();
  }
};

TEST(Rnic, TwoSaturatingQpsSplitEvenly) {
  Bench b;
  Saturator s{b, {b.rnic.create_qp(1, TransportMode::kUC), b.rnic.create_qp(2, TransportMode::kUC)}, {}};
  s.run(20000);
  EXPECT_NEAR(s.bytes[1] / (s.bytes[1] + s.bytes[2]), 0.5, 0.01);
}

TEST(Rnic, RoundRobinShareIsPerQp) {
  Bench b;
  Saturator s{b, {b.rnic.create_qp(1, TransportMode::kUC)}, {}};
  for (int i = 0; i < 8; ++i) s.qps.push_back(b.rnic.create_qp(2, TransportMode::kUC));
  s.run(50000);
  EXPECT_NEAR(s.bytes[1] / (s.bytes[1] + s.bytes[2]), 1.0 / 9.0, 0.01 / 9.0);
}

TEST(Rnic, PacedQpIsCappedAtPaceRate) {
  Bench b;
  Saturator s{b, {b.rnic.create_qp(1, TransportMode::kUC), b.rnic.create_qp(2, TransportMode::kUC)}, {}};
  b.rnic.set_pace(s.qps[1], 10000.0);  // verbs per second
  s.run(100000);                        // 0.1 s
  const double verbs = s.bytes[2] / 65536.0;
  // Never above the pace; a paced QP may lose part of a turn waiting for tokens.
  EXPECT_LE(verbs, 1001.0);
  EXPECT_GE(verbs, 900.0);
  EXPECT_EQ(b.rnic.qp_info(s.qps[1])->state, QpState::kPaced);
}

TEST(Rnic, GrantedBytesNeverExceedLinkRate) {
  Bench b;
  Saturator s{b, {}, {}};
  for (int i = 0; i < 5; ++i) s.qps.push_back(b.rnic.create_qp(1 + i % 2, TransportMode::kRC));
  s.run(20000);
  EXPECT_LE(b.rnic.total_wire_bytes(), b.rnic.config().link_bytes_per_us() * 20000 * (1 + 1e-9));
}

}  // namespace
}  // namespace rnicsim
