#include "rnicsim/engine/simulator.hpp"

#include <algorithm>
#include <utility>

#include "rnicsim/engine/check.hpp"

namespace rnicsim {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kVerbPosted:
      return "verb_posted";
    case EventKind::kTransmissionSlot:
      return "transmission_slot";
    case EventKind::kTelemetryTick:
      return "telemetry_tick";
    case EventKind::kDefenseTick:
      return "defense_tick";
    case EventKind::kWorkloadPhase:
      return "workload_phase";
  }
  return "unknown";
}

namespace {

inline void fnv_mix(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffU;
    h *= 0x100000001b3ULL;
  }
}

}  // namespace

void EventTrace::append(const TraceRecord& r, bool keep) {
  fnv_mix(digest, static_cast<std::uint64_t>(r.fire_at.ticks));
  fnv_mix(digest, r.sequence);
  fnv_mix(digest, static_cast<std::uint64_t>(r.kind));
  fnv_mix(digest, static_cast<std::uint64_t>(r.tag));
  ++count;
  if (keep) records.push_back(r);
}

std::uint64_t Simulator::schedule(SimTime fire_at, EventKind kind,
                                  Handler handler, std::int64_t tag) {
  RNICSIM_CHECK(fire_at >= now_, "event scheduled in the past");
  const std::uint64_t seq = next_sequence_++;
  heap_.push_back(Entry{fire_at, seq, kind, tag, std::move(handler)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  return seq;
}

std::optional<SimTime> Simulator::next_event_time() const {
  if (heap_.empty()) return std::nullopt;
  return heap_.front().fire_at;
}

EventTrace Simulator::run(SimTime until) {
  RNICSIM_CHECK(until >= now_, "run() target lies in the past");
  EventTrace trace;
  while (!heap_.empty() && heap_.front().fire_at <= until) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Entry e = std::move(heap_.back());
    heap_.pop_back();
    now_ = e.fire_at;
    const TraceRecord rec{e.fire_at, e.sequence, e.kind, e.tag};
    trace.append(rec, record_full_trace_);
    cumulative_.append(rec, record_full_trace_);
    if (e.handler) e.handler();
  }
  now_ = until;
  return trace;
}

}  // namespace rnicsim
