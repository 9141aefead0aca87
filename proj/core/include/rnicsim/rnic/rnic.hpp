#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "rnicsim/engine/sim_time.hpp"
#include "rnicsim/rnic/config.hpp"
#include "rnicsim/rnic/counters.hpp"
#include "rnicsim/rnic/lru_cache.hpp"
#include "rnicsim/rnic/pfc_buffer.hpp"
#include "rnicsim/rnic/types.hpp"
#include "rnicsim/rnic/wire_model.hpp"

namespace rnicsim {

struct Grant {
  QpId qp = 0;
  double wire_bytes = 0.0;
  double pipeline_us = 0.0;
  std::uint64_t verbs = 0;
};

struct QpInfo {
  QpId id = 0;
  ContainerId owner = 0;
  TransportMode mode = TransportMode::kRC;
  QpState state = QpState::kActive;
  double pace_rate = 0.0;  // verbs per second, meaningful when paced
  bool deprioritized = false;
  std::uint64_t queued = 0;
  std::uint64_t inflight = 0;
};

// Time integrals per container, read by telemetry as deltas.
struct ContainerGauges {
  double backlog_qp_us = 0.0;  // integral of QPs with queued work
  double busy_us = 0.0;        // pipeline time spent on this container
  double rx_bytes = 0.0;       // bytes delivered into the RX buffer
  std::uint32_t qp_count = 0;
};

// Shared RNIC: QP table, MTT/ICM/WQE caches, a round-robin transmit
// pipeline and the PFC-governed RX ingress buffer.
//
// The pipeline runs deficit round robin over QPs in qp_id order in units of
// pipeline time. Each turn a backlogged, eligible QP is credited rr_slot_us
// and serves work requests while its deficit is positive; overdraft carries
// into the next turn. A QP is eligible when its head request is ready, its
// RC send window has room, its pacing and QoS token buckets allow the head,
// and (for verbs that land in the RX buffer) the link is not paused.
class Rnic {
 public:
  using CompletionHandler = std::function<void(const Completion&)>;

  explicit Rnic(RnicConfig config, CounterSink* sink = nullptr);
  ~Rnic();

  Rnic(const Rnic&) = delete;
  Rnic& operator=(const Rnic&) = delete;

  const RnicConfig& config() const { return config_; }
  const WireModel& wire_model() const { return wire_; }

  void register_container(ContainerId owner);
  bool has_container(ContainerId owner) const;
  void set_completion_handler(ContainerId owner, CompletionHandler handler);

  // Throws QpCapacityExhausted when the table is full and QpCreationBlocked
  // when the defense has blocked the owner. Touches one ICM entry.
  QpId create_qp(ContainerId owner, TransportMode mode);
  // Fatal for an unknown id. Queued work is discarded.
  void destroy_qp(QpId qp);

  // Throws IllegalVerbForMode, QueueFull, InvalidWorkRequest.
  void post_work_request(QpId qp, const WorkRequest& wr);
  // Posts up to `count` copies of `wr`; one-sided copies advance remote_page
  // by `page_stride` each. Returns how many fit in the send queue.
  std::uint64_t post_batch(QpId qp, const WorkRequest& wr, std::uint64_t count,
                           std::uint64_t page_stride = 0);

  // MTT lookup for `owner`'s page; records hit/miss.
  bool lookup_translation(ContainerId owner, std::uint64_t page);

  double wire_bytes(VerbKind verb, TransportMode mode,
                    std::uint64_t payload_bytes) const {
    return wire_.wire_bytes(verb, mode, payload_bytes);
  }

  // Service time of one request with warm caches.
  double base_service_us(VerbKind verb, TransportMode mode,
                         std::uint64_t payload_bytes) const;

  // Runs the pipeline over [tick, tick + 1) and steps the PFC buffer once.
  // Returns the grants made during the tick.
  const std::vector<Grant>& tx_schedule_cycle(SimTime tick);

  // Adds RX arrivals for the current tick, attributed to from_qp's owner.
  void rx_ingress(double bytes, double verbs, QpId from_qp);

  // Earliest tick at which tx_schedule_cycle can do anything, given no new
  // posts or control changes. Returns `from` when work is pending.
  SimTime next_active_tick(SimTime from) const;

  // Defense and QoS controls.
  void set_pace(QpId qp, double verbs_per_second);
  void set_blocked(QpId qp, bool blocked);
  void release(QpId qp);
  void set_deprioritized(QpId qp, bool deprioritized);
  void block_qp_creation(ContainerId owner, bool blocked);
  bool qp_creation_blocked(ContainerId owner) const;
  // Egress rate limits in bytes per second; nullopt clears.
  void set_rate_limits(ContainerId owner, std::optional<double> max_bytes_per_s,
                       std::optional<double> min_bytes_per_s);

  // Queries.
  std::optional<QpInfo> qp_info(QpId qp) const;
  std::vector<QpId> qps_of(ContainerId owner) const;
  std::size_t qp_count() const { return qps_.size(); }
  std::size_t active_qp_count(ContainerId owner) const;
  ContainerGauges gauges(ContainerId owner, double now_us);
  double estimated_service_us(QpId qp) const;

  const LruCache& mtt() const { return mtt_; }
  const LruCache& icm() const { return icm_; }
  const LruCache& wqe_cache() const { return wqe_; }
  const PfcBuffer& pfc() const { return pfc_; }
  double pipeline_clock_us() const { return clock_; }
  double total_wire_bytes() const { return total_wire_bytes_; }

 private:
  struct Batch;
  struct Qp;
  struct ContainerState;
  struct TokenBucket;

  Qp& get_qp(QpId id);
  const Qp* find_qp(QpId id) const;
  ContainerState& container(ContainerId id);

  double wake_time(Qp& q, double now, int& prio_class);
  void serve_turn(Qp& q, double tick_end);
  void set_backlogged(Qp& q, bool backlogged, double t);
  void integrate(ContainerState& c, double t);
  void emit(const CounterEvent& e) {
    if (sink_) sink_->record(e);
  }
  std::uint64_t mtt_key(ContainerId owner, std::uint64_t page) const;
  void mark_dirty() { idle_until_ = 0.0; }

  RnicConfig config_;
  WireModel wire_;
  CounterSink* sink_;

  LruCache mtt_;
  LruCache icm_;
  LruCache wqe_;
  PfcBuffer pfc_;
  double rx_buffer_verbs_ = 0.0;

  std::vector<std::unique_ptr<Qp>> qps_;  // ascending qp_id
  std::size_t cursor_ = 0;
  QpId next_qp_id_ = 1;
  std::map<ContainerId, std::unique_ptr<ContainerState>> containers_;
  std::size_t deprioritized_count_ = 0;
  std::size_t min_rate_count_ = 0;

  double clock_ = 0.0;
  double idle_until_ = 0.0;
  double tick_arrival_bytes_ = 0.0;
  double tick_arrival_verbs_ = 0.0;
  std::map<ContainerId, double> tick_arrivals_by_owner_;
  std::vector<Grant> grants_;
  double total_wire_bytes_ = 0.0;
};

}  // namespace rnicsim
