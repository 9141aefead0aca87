#pragma once

#include <cstdint>
#include <variant>

#include "rnicsim/rnic/types.hpp"

namespace rnicsim {

// Work requests of one batch that finished pipeline service together.
struct Completion {
  QpId qp = 0;
  ContainerId owner = 0;
  VerbKind verb = VerbKind::kSend;
  TransportMode mode = TransportMode::kRC;
  std::uint64_t count = 0;
  std::uint64_t payload_bytes_each = 0;
  double wire_bytes_total = 0.0;
  double latency_sum_us = 0.0;
  double latency_max_us = 0.0;
  double ready_at_us = 0.0;
  double end_us = 0.0;
};

struct CacheAccessEvent {
  ContainerId owner = 0;
  CacheKind cache = CacheKind::kMtt;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
};

struct PauseFrameEvent {
  ContainerId attributed_to = 0;
  double t_us = 0.0;
};

struct QpLifecycleEvent {
  ContainerId owner = 0;
  QpId qp = 0;
  bool created = true;
};

struct QpExhaustedEvent {
  ContainerId owner = 0;
};

using CounterEvent = std::variant<Completion, CacheAccessEvent, PauseFrameEvent,
                                  QpLifecycleEvent, QpExhaustedEvent>;

class CounterSink {
 public:
  virtual ~CounterSink() = default;
  virtual void record(const CounterEvent& event) = 0;
};

}  // namespace rnicsim
