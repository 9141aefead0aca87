#include "rnicsim/rnic/pfc_buffer.hpp"

#include <algorithm>

#include "rnicsim/engine/check.hpp"

namespace rnicsim {

PfcBuffer::PfcBuffer(const PfcConfig& config) : config_(config) {
  RNICSIM_CHECK(config.xon_bytes >= 0 && config.xon_bytes < config.xoff_bytes &&
                    config.xoff_bytes <= config.capacity_bytes,
                "PFC thresholds must satisfy 0 <= xon < xoff <= capacity");
}

bool PfcBuffer::tick(double arrival_bytes, double drain_bytes) {
  occupancy_ += arrival_bytes;
  if (occupancy_ > config_.capacity_bytes) {
    overflow_ += occupancy_ - config_.capacity_bytes;
    occupancy_ = config_.capacity_bytes;
  }
  bool emitted = false;
  if (!paused_ && occupancy_ >= config_.xoff_bytes) {
    paused_ = true;
    ++pause_frames_;
    emitted = true;
  }
  occupancy_ -= std::min(occupancy_, std::max(0.0, drain_bytes));
  if (paused_ && occupancy_ < config_.xon_bytes) paused_ = false;
  return emitted;
}

}  // namespace rnicsim
