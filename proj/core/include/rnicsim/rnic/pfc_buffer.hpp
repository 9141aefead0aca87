#pragma once

#include <cstdint>

namespace rnicsim {

struct PfcConfig {
  double capacity_bytes = 2097152;
  double xoff_bytes = 1572864;
  double xon_bytes = 524288;

  bool operator==(const PfcConfig&) const = default;
};

// RX ingress buffer with XOFF/XON hysteresis. Stepped once per tick:
//   occupancy += arrivals
//   if not paused and occupancy >= xoff: paused, emit one PAUSE frame
//   occupancy -= min(occupancy, drain)
//   if paused and occupancy < xon: resume
// Arrivals beyond capacity are counted as overflow (a lossless link should
// never see any).
class PfcBuffer {
 public:
  explicit PfcBuffer(const PfcConfig& config);

  // Returns true when this tick emitted a PAUSE frame.
  bool tick(double arrival_bytes, double drain_bytes);

  double occupancy_bytes() const { return occupancy_; }
  bool paused() const { return paused_; }
  std::uint64_t pause_frames_emitted() const { return pause_frames_; }
  double overflow_bytes() const { return overflow_; }
  const PfcConfig& config() const { return config_; }

 private:
  PfcConfig config_;
  double occupancy_ = 0.0;
  bool paused_ = false;
  std::uint64_t pause_frames_ = 0;
  double overflow_ = 0.0;
};

}  // namespace rnicsim
