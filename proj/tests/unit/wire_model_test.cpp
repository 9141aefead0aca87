#include <gtest/gtest.h>

#include "rnicsim/rnic/errors.hpp"
#include "rnicsim/rnic/wire_model.hpp"

namespace rnicsim {
namespace {

TEST(WireModel, DefaultRcBytesAtEightBytePayload) {
  const WireModel w;
  EXPECT_NEAR(w.wire_bytes(VerbKind::kAtomic, TransportMode::kRC, 8), 184.8, 1e-9);
  EXPECT_NEAR(w.wire_bytes(VerbKind::kSend, TransportMode::kRC, 8), 146.08, 1e-9);
  EXPECT_NEAR(w.wire_bytes(VerbKind::kWrite, TransportMode::kRC, 8), 176.08, 1e-9);
  EXPECT_NEAR(w.wire_bytes(VerbKind::kRead, TransportMode::kRC, 8), 160.8, 1e-9);
}

TEST(WireModel, OverheadOrdering) {
  const WireModel w;
  const auto rc = [&](VerbKind v) { return w.overhead(v, TransportMode::kRC); };
  EXPECT_GT(rc(VerbKind::kAtomic), rc(VerbKind::kWrite));
  EXPECT_GT(rc(VerbKind::kWrite), rc(VerbKind::kRead));
  EXPECT_GT(rc(VerbKind::kRead), rc(VerbKind::kSend));
}

TEST(WireModel, UcDropsAckCharge) {
  const WireModel w;
  for (VerbKind v : {VerbKind::kSend, VerbKind::kWrite}) {
    EXPECT_NEAR(w.overhead(v, TransportMode::kRC) - w.overhead(v, TransportMode::kUC), 8.0, 1e-9);
    EXPECT_GT(w.overhead(v, TransportMode::kUC), 0.0);
  }
}

TEST(WireModel, RecvIsFreeAndUcOneSidedIllegal) {
  const WireModel w;
  EXPECT_EQ(w.wire_bytes(VerbKind::kRecv, TransportMode::kRC, 64), 0.0);
  EXPECT_THROW(w.wire_bytes(VerbKind::kRead, TransportMode::kUC, 8), IllegalVerbForMode);
  EXPECT_THROW(w.wire_bytes(VerbKind::kAtomic, TransportMode::kUC, 8), IllegalVerbForMode);
}

TEST(WireModel, ZeroOverheadIsPayload) {
  const WireModel w(WireOverheadTable{});
  EXPECT_EQ(w.wire_bytes(VerbKind::kWrite, TransportMode::kRC, 8), 8.0);
}

TEST(WireModel, FromAmplificationReproducesRatios) {
  const auto t = WireOverheadTable::from_amplification(10, 12, 11, 13, 16, 4);
  const WireModel w(t);
  EXPECT_NEAR(w.wire_bytes(VerbKind::kSend, TransportMode::kRC, 16) / 16, 10.0, 1e-12);
  EXPECT_NEAR(w.wire_bytes(VerbKind::kAtomic, TransportMode::kRC, 16) / 16, 13.0, 1e-12);
  EXPECT_NEAR(w.overhead(VerbKind::kWrite, TransportMode::kUC), 11 * 16 - 4, 1e-12);
}

}  // namespace
}  // namespace rnicsim
