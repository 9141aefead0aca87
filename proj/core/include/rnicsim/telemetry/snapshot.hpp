#pragma once

#include <cstdint>

#include "rnicsim/engine/sim_time.hpp"
#include "rnicsim/rnic/types.hpp"

namespace rnicsim {

// Per-container metrics for one telemetry interval ending at `t`.
struct TelemetrySnapshot {
  SimTime t{};
  ContainerId container = 0;
  double goodput_bps = 0.0;
  double avg_latency_us = 0.0;
  double max_latency_us = 0.0;
  double mtt_miss_rate = 0.0;
  double icm_miss_rate = 0.0;
  double wqe_miss_rate = 0.0;
  std::uint64_t pause_frames_delta = 0;
  std::uint32_t qp_count = 0;
  double qp_create_rate = 0.0;
  double cq_create_rate = 0.0;
  double tx_occupancy = 0.0;
  double rx_occupancy = 0.0;
  double rcv_bytes = 0.0;

  // Raw interval totals behind the rates above.
  double payload_bytes = 0.0;
  std::uint64_t completed_verbs = 0;
  std::uint64_t qp_exhausted_events = 0;
};

}  // namespace rnicsim
