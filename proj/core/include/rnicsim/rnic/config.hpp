#pragma once

#include <cstdint>

#include "rnicsim/rnic/pfc_buffer.hpp"
#include "rnicsim/rnic/wire_model.hpp"

namespace rnicsim {

// Tunables of the shared RNIC. The real device does not publish these; the
// defaults are a calibration under which the attack trends reproduce (see
// docs/calibration.md).
struct RnicConfig {
  double link_gbps = 100.0;
  std::uint32_t max_qps = 2048;
  std::uint32_t max_outstanding_wqes = 256;
  std::uint64_t max_message_bytes = 1ULL << 20;

  std::uint32_t mtt_entries = 4096;
  std::uint32_t icm_entries = 1024;
  std::uint32_t wqe_entries = 256;
  double mtt_miss_penalty_us = 1.0;
  double icm_miss_penalty_us = 1.0;
  double wqe_miss_penalty_us = 1.0;

  // Pipeline service time per work request is
  //   max(wire_bytes / link rate, verb_processing_us) * (ATOMIC ? atomic_cost_multiplier : 1)
  //   + cache miss penalties.
  double verb_processing_us = 0.05;
  double atomic_cost_multiplier = 2.0;
  // Round-robin grant per QP turn, in pipeline microseconds.
  double rr_slot_us = 8.0;

  // RC reliability: unacknowledged verbs per QP, and the ACK return delay.
  // READ slots free at completion since the response acknowledges them.
  std::uint32_t rc_inflight_cap = 128;
  double rc_ack_delay_us = 200.0;

  // RX ingress drain: bytes per second and work requests per microsecond.
  double rx_gbps = 100.0;
  double rx_verbs_per_us = 2.0;
  PfcConfig pfc{};

  // Fixed host/network part of a verb's latency on an idle RNIC.
  double base_latency_us = 1.56;

  std::uint64_t page_bytes = 4096;
  WireOverheadTable wire_overhead = WireOverheadTable::defaults();

  double link_bytes_per_us() const { return link_gbps * 1e9 / 8.0 / 1e6; }
  double rx_bytes_per_us() const { return rx_gbps * 1e9 / 8.0 / 1e6; }

  bool operator==(const RnicConfig&) const = default;
};

}  // namespace rnicsim
