#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "rnicsim/engine/sim_time.hpp"

namespace rnicsim {

enum class EventKind : std::uint8_t {
  kVerbPosted,
  kTransmissionSlot,
  kTelemetryTick,
  kDefenseTick,
  kWorkloadPhase,
};

std::string_view to_string(EventKind kind);

struct TraceRecord {
  SimTime fire_at;
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::kVerbPosted;
  std::int64_t tag = 0;

  bool operator==(const TraceRecord&) const = default;
};

// Ordered record of processed events. The digest always covers every event;
// the record vector is only filled when full recording is enabled, because a
// 40 s run at 1 us slots processes tens of millions of events.
struct EventTrace {
  std::vector<TraceRecord> records;
  std::uint64_t digest = 0xcbf29ce484222325ULL;
  std::uint64_t count = 0;

  void append(const TraceRecord& r, bool keep);
  bool operator==(const EventTrace&) const = default;
};

class Simulator {
 public:
  using Handler = std::function<void()>;

  explicit Simulator(bool record_full_trace = false)
      : record_full_trace_(record_full_trace) {}

  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  // Returns the sequence number assigned to the event. Scheduling before
  // now() is fatal.
  std::uint64_t schedule(SimTime fire_at, EventKind kind, Handler handler,
                         std::int64_t tag = 0);

  // Processes every event with fire_at <= until in (fire_at, sequence)
  // order, then leaves the clock at `until`. Returns the events processed by
  // this call.
  EventTrace run(SimTime until);

  SimTime now() const { return now_; }
  std::size_t pending() const { return heap_.size(); }
  // fire_at of the earliest pending event.
  std::optional<SimTime> next_event_time() const;

  // Trace accumulated over all run() calls so far.
  const EventTrace& cumulative_trace() const { return cumulative_; }

 private:
  struct Entry {
    SimTime fire_at;
    std::uint64_t sequence;
    EventKind kind;
    std::int64_t tag;
    Handler handler;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
      return a.sequence > b.sequence;
    }
  };

  std::vector<Entry> heap_;
  SimTime now_{};
  std::uint64_t next_sequence_ = 1;
  bool record_full_trace_;
  EventTrace cumulative_;
};

}  // namespace rnicsim
