#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "rnicsim/engine/rng.hpp"
#include "rnicsim/engine/simulator.hpp"
#include "rnicsim/rnic/rnic.hpp"
#include "rnicsim/workload/spec.hpp"

namespace rnicsim {

// Drives one container's workload: creates QPs per the ramp, keeps send
// queues full (or one READ outstanding for read_lat), and stops posting at
// start + duration. Owned QPs stay allocated after the stop.
class WorkloadGenerator {
 public:
  // `wake` is called after posts made outside a pipeline completion so the
  // runner can reschedule a sleeping pipeline.
  WorkloadGenerator(ContainerId owner, WorkloadSpec spec, Rnic& rnic, Simulator& sim,
                    RngStream rng, std::function<void()> wake);

  WorkloadGenerator(const WorkloadGenerator&) = delete;
  WorkloadGenerator& operator=(const WorkloadGenerator&) = delete;

  // Schedules start, ramp and stop phase events.
  void install();

  ContainerId owner() const { return owner_; }
  const WorkloadSpec& spec() const { return spec_; }
  bool running() const { return running_; }
  std::uint64_t posted() const { return posted_; }
  std::uint64_t creation_failures() const { return creation_failures_; }
  std::optional<SimTime> stop_time() const;

 private:
  struct QpCursor {
    std::uint64_t sequence = 0;  // WRs posted so far, drives SEND/RECV alternation
    std::uint64_t page = 0;
  };

  void begin();
  void finish();
  void resize(std::uint32_t target);
  void fill(QpId qp, std::uint64_t count, double at_us);
  void on_completion(const Completion& c);
  void post_read(QpId qp, double at_us);

  ContainerId owner_;
  WorkloadSpec spec_;
  Rnic& rnic_;
  Simulator& sim_;
  RngStream rng_;
  std::function<void()> wake_;

  bool running_ = false;
  std::map<QpId, QpCursor> qps_;
  std::uint64_t next_page_ = 0;  // shared address cursor for cache depletion
  std::uint64_t posted_ = 0;
  std::uint64_t creation_failures_ = 0;
};

}  // namespace rnicsim
