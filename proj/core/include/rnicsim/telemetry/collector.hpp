#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rnicsim/rnic/counters.hpp"
#include "rnicsim/rnic/rnic.hpp"
#include "rnicsim/telemetry/snapshot.hpp"

namespace rnicsim {

struct AmplificationEntry {
  VerbKind verb = VerbKind::kSend;
  TransportMode mode = TransportMode::kRC;
  double received_bytes = 0.0;  // R_v
  double payload_bytes = 0.0;   // L_v summed over verbs
  std::uint64_t count = 0;

  // R_v / (L_v * count); absent when nothing was issued or payload is zero.
  std::optional<double> ratio() const;
};

struct AmplificationReport {
  std::vector<AmplificationEntry> entries;  // ordered by (verb, mode)
};

// Accumulates counter events into per-container interval deltas and cuts a
// snapshot per container every telemetry period.
class TelemetryCollector : public CounterSink {
 public:
  explicit TelemetryCollector(SimTime period);

  void add_container(ContainerId id);
  void record(const CounterEvent& event) override;

  // Closes the interval ending at `t`. Gauges are cumulative integrals read
  // from the RNIC; the collector differences them per interval.
  std::vector<TelemetrySnapshot> snapshot(SimTime t, Rnic& rnic);

  const std::vector<TelemetrySnapshot>& history() const { return history_; }
  std::vector<TelemetrySnapshot> history_of(ContainerId id) const;
  const std::vector<ContainerId>& containers() const { return order_; }
  SimTime period() const { return period_; }

  std::optional<double> amplification_ratio(VerbKind verb) const;
  std::optional<double> amplification_ratio(VerbKind verb, TransportMode mode) const;
  AmplificationReport amplification_report() const;

  // Run totals.
  double total_payload_bytes(ContainerId id) const;
  std::uint64_t total_pause_frames() const { return total_pauses_; }
  std::uint64_t pause_frames_of(ContainerId id) const;
  std::uint64_t qp_exhausted_events(ContainerId id) const;

 private:
  struct Interval {
    double payload = 0.0;
    double wire = 0.0;
    double latency_sum = 0.0;
    double latency_max = 0.0;
    std::uint64_t verbs = 0;
    std::array<std::uint64_t, 3> hits{};
    std::array<std::uint64_t, 3> misses{};
    std::uint64_t pauses = 0;
    std::uint64_t creates = 0;
    std::uint64_t exhausted = 0;
  };
  struct PerContainer {
    Interval cur;
    ContainerGauges last_gauges;
    double payload_total = 0.0;
    std::uint64_t pauses_total = 0;
    std::uint64_t exhausted_total = 0;
  };

  PerContainer& slot(ContainerId id);

  SimTime period_;
  SimTime last_cut_{};
  std::vector<ContainerId> order_;
  std::map<ContainerId, PerContainer> per_;
  std::array<std::array<AmplificationEntry, 2>, 5> amp_{};
  std::vector<TelemetrySnapshot> history_;
  std::uint64_t total_pauses_ = 0;
};

}  // namespace rnicsim
