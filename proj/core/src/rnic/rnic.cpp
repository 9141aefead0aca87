#include "rnicsim/rnic/rnic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rnicsim/engine/check.hpp"
#include "rnicsim/rnic/errors.hpp"

namespace rnicsim {

namespace {
constexpr double kNever = std::numeric_limits<double>::infinity();
}

struct Rnic::Batch {
  VerbKind verb = VerbKind::kSend;
  std::uint64_t payload = 0;
  std::uint64_t count = 0;
  bool addressed = false;
  std::uint64_t page = 0;
  std::uint64_t stride = 0;
  double ready_at = 0.0;
  bool wqe_miss = false;  // the first request of the batch pays a WQE fetch
};

struct Rnic::TokenBucket {
  double rate_per_us = 0.0;
  double depth = 0.0;
  double tokens = 0.0;
  double updated = 0.0;

  void refill(double now) {
    if (now > updated) {
      tokens = std::min(depth, tokens + rate_per_us * (now - updated));
      updated = now;
    }
  }
  double wake(double need) const {
    if (tokens >= need) return updated;
    if (rate_per_us <= 0.0) return kNever;
    return updated + (need - tokens) / rate_per_us;
  }
};

struct Rnic::Qp {
  QpId id = 0;
  ContainerId owner = 0;
  TransportMode mode = TransportMode::kRC;
  QpState state = QpState::kActive;
  bool deprioritized = false;

  std::deque<Batch> queue;
  std::uint64_t queued = 0;
  std::deque<std::pair<double, std::uint64_t>> acks;
  std::uint64_t inflight = 0;

  double deficit = 0.0;
  bool in_turn = false;
  double turn_penalty_us = 0.0;
  bool backlogged = false;

  std::optional<TokenBucket> pace;
  double pace_rate = 0.0;

  VerbKind last_verb = VerbKind::kSend;
  std::uint64_t last_payload = 0;
};

struct Rnic::ContainerState {
  bool creation_blocked = false;
  CompletionHandler handler;
  std::uint32_t backlogged_qps = 0;
  std::uint32_t qp_count = 0;
  double backlog_integral = 0.0;
  double last_t = 0.0;
  double busy = 0.0;
  double rx_bytes = 0.0;
  std::optional<TokenBucket> max_bucket;
  std::optional<TokenBucket> min_bucket;
};

Rnic::Rnic(RnicConfig config, CounterSink* sink)
    : config_(config),
      wire_(config.wire_overhead),
      sink_(sink),
      mtt_(config.mtt_entries),
      icm_(config.icm_entries),
      wqe_(config.wqe_entries),
      pfc_(config.pfc) {
  for (VerbKind v : kAllVerbs) {
    if (v == VerbKind::kRecv) continue;
    RNICSIM_CHECK(config.wire_overhead.at(v, TransportMode::kRC) > 0.0,
                  "per-verb wire overhead must be strictly positive");
    if (verb_legal(v, TransportMode::kUC)) {
      RNICSIM_CHECK(config.wire_overhead.at(v, TransportMode::kUC) > 0.0,
                    "per-verb wire overhead must be strictly positive");
    }
  }
  RNICSIM_CHECK(config.link_gbps > 0 && config.rx_gbps > 0, "link rate must be positive");
  RNICSIM_CHECK(config.rr_slot_us > 0, "rr_slot_us must be positive");
}

Rnic::~Rnic() = default;

void Rnic::register_container(ContainerId owner) {
  if (!containers_.count(owner)) {
    containers_.emplace(owner, std::make_unique<ContainerState>());
  }
}

bool Rnic::has_container(ContainerId owner) const { return containers_.count(owner) != 0; }

Rnic::ContainerState& Rnic::container(ContainerId id) {
  auto it = containers_.find(id);
  RNICSIM_CHECK(it != containers_.end(), "unknown container");
  return *it->second;
}

void Rnic::set_completion_handler(ContainerId owner, CompletionHandler handler) {
  container(owner).handler = std::move(handler);
}

Rnic::Qp& Rnic::get_qp(QpId id) {
  auto it = std::lower_bound(qps_.begin(), qps_.end(), id,
                             [](const std::unique_ptr<Qp>& q, QpId v) { return q->id < v; });
  RNICSIM_CHECK(it != qps_.end() && (*it)->id == id, "unknown qp_id");
  return **it;
}

const Rnic::Qp* Rnic::find_qp(QpId id) const {
  auto it = std::lower_bound(qps_.begin(), qps_.end(), id,
                             [](const std::unique_ptr<Qp>& q, QpId v) { return q->id < v; });
  if (it == qps_.end() || (*it)->id != id) return nullptr;
  return it->get();
}

std::uint64_t Rnic::mtt_key(ContainerId owner, std::uint64_t page) const {
  return (static_cast<std::uint64_t>(owner) << 48) ^ page;
}

void Rnic::integrate(ContainerState& c, double t) {
  if (t > c.last_t) {
    c.backlog_integral += static_cast<double>(c.backlogged_qps) * (t - c.last_t);
    c.last_t = t;
  }
}

void Rnic::set_backlogged(Qp& q, bool backlogged, double t) {
  if (q.backlogged == backlogged) return;
  ContainerState& c = container(q.owner);
  integrate(c, t);
  q.backlogged = backlogged;
  if (backlogged) {
    ++c.backlogged_qps;
  } else {
    --c.backlogged_qps;
  }
}

QpId Rnic::create_qp(ContainerId owner, TransportMode mode) {
  ContainerState& c = container(owner);
  if (c.creation_blocked) {
    throw QpCreationBlocked("QP creation blocked for container " + std::to_string(owner));
  }
  if (qps_.size() >= config_.max_qps) {
    emit(QpExhaustedEvent{owner});
    throw QpCapacityExhausted("QP table full (" + std::to_string(config_.max_qps) + ")");
  }
  auto q = std::make_unique<Qp>();
  q->id = next_qp_id_++;
  q->owner = owner;
  q->mode = mode;
  const QpId id = q->id;
  qps_.push_back(std::move(q));
  ++c.qp_count;
  const bool hit = icm_.lookup(id);
  emit(CacheAccessEvent{owner, CacheKind::kIcm, hit ? 1u : 0u, hit ? 0u : 1u});
  emit(QpLifecycleEvent{owner, id, true});
  mark_dirty();
  return id;
}

void Rnic::destroy_qp(QpId id) {
  auto it = std::lower_bound(qps_.begin(), qps_.end(), id,
                             [](const std::unique_ptr<Qp>& q, QpId v) { return q->id < v; });
  RNICSIM_CHECK(it != qps_.end() && (*it)->id == id, "destroy_qp: unknown qp_id");
  Qp& q = **it;
  set_backlogged(q, false, clock_);
  if (q.deprioritized) --deprioritized_count_;
  ContainerState& c = container(q.owner);
  --c.qp_count;
  const ContainerId owner = q.owner;
  icm_.erase(id);
  wqe_.erase(id);
  const auto idx = static_cast<std::size_t>(it - qps_.begin());
  qps_.erase(it);
  if (idx < cursor_) --cursor_;
  if (cursor_ >= qps_.size()) cursor_ = 0;
  emit(QpLifecycleEvent{owner, id, false});
  mark_dirty();
}

void Rnic::post_work_request(QpId id, const WorkRequest& wr) {
  Qp& q = get_qp(id);
  if (q.queued >= config_.max_outstanding_wqes) {
    throw QueueFull("send queue of qp " + std::to_string(id) + " is full");
  }
  post_batch(id, wr, 1, 0);
}

std::uint64_t Rnic::post_batch(QpId id, const WorkRequest& wr, std::uint64_t count,
                               std::uint64_t page_stride) {
  Qp& q = get_qp(id);
  if (!verb_legal(wr.verb, q.mode)) {
    throw IllegalVerbForMode(std::string(to_string(wr.verb)) + " posted on " +
                             std::string(to_string(q.mode)) + " qp " + std::to_string(id));
  }
  if (wr.payload_bytes > config_.max_message_bytes) {
    throw InvalidWorkRequest("payload exceeds max_message_bytes");
  }
  if (verb_addressed(wr.verb) != wr.remote_page.has_value()) {
    throw InvalidWorkRequest("remote address must be present exactly for one-sided verbs");
  }
  if (q.state == QpState::kBlocked) {
    throw InvalidWorkRequest("qp " + std::to_string(id) + " is blocked");
  }
  const std::uint64_t room = config_.max_outstanding_wqes - std::min<std::uint64_t>(
                                                                q.queued, config_.max_outstanding_wqes);
  const std::uint64_t accepted = std::min(count, room);
  if (accepted == 0) return 0;

  const bool hit = wqe_.lookup_repeated(id, accepted);
  emit(CacheAccessEvent{q.owner, CacheKind::kWqe, accepted - (hit ? 0 : 1), hit ? 0u : 1u});

  const bool addressed = verb_addressed(wr.verb);
  const std::uint64_t page = wr.remote_page.value_or(0);
  bool merged = false;
  if (hit && !q.queue.empty()) {
    Batch& tail = q.queue.back();
    if (tail.verb == wr.verb && tail.payload == wr.payload_bytes &&
        tail.ready_at == wr.posted_at_us && tail.addressed == addressed &&
        (!addressed || (tail.stride == page_stride &&
                        tail.page + tail.count * tail.stride == page))) {
      tail.count += accepted;
      merged = true;
    }
  }
  if (!merged) {
    Batch b;
    b.verb = wr.verb;
    b.payload = wr.payload_bytes;
    b.count = accepted;
    b.addressed = addressed;
    b.page = page;
    b.stride = addressed ? page_stride : 0;
    b.ready_at = wr.posted_at_us;
    b.wqe_miss = !hit;
    q.queue.push_back(b);
  }
  q.queued += accepted;
  q.last_verb = wr.verb;
  q.last_payload = wr.payload_bytes;
  set_backlogged(q, true, wr.posted_at_us);
  mark_dirty();
  return accepted;
}

bool Rnic::lookup_translation(ContainerId owner, std::uint64_t page) {
  const bool hit = mtt_.lookup(mtt_key(owner, page));
  emit(CacheAccessEvent{owner, CacheKind::kMtt, hit ? 1u : 0u, hit ? 0u : 1u});
  return hit;
}

double Rnic::base_service_us(VerbKind verb, TransportMode mode,
                             std::uint64_t payload_bytes) const {
  const double wire = wire_.wire_bytes(verb, mode, payload_bytes);
  double t = std::max(wire / config_.link_bytes_per_us(), config_.verb_processing_us);
  if (verb == VerbKind::kAtomic) t *= config_.atomic_cost_multiplier;
  return t;
}

double Rnic::estimated_service_us(QpId id) const {
  const Qp* q = find_qp(id);
  if (!q) return 0.0;
  if (!q->queue.empty()) {
    const Batch& b = q->queue.front();
    return base_service_us(b.verb, q->mode, b.payload);
  }
  return base_service_us(q->last_verb, q->mode, q->last_payload);
}

double Rnic::wake_time(Qp& q, double now, int& prio_class) {
  prio_class = 1;
  if (q.state == QpState::kBlocked || q.queue.empty()) return kNever;
  const Batch& h = q.queue.front();
  double t = std::max(now, h.ready_at);
  // Resume clears idle_until_, so a paused head needs no timed wake.
  if (verb_enters_rx_buffer(h.verb) && pfc_.paused()) return kNever;
  if (q.mode == TransportMode::kRC && verb_acked(h.verb)) {
    while (!q.acks.empty() && q.acks.front().first <= now) {
      q.inflight -= q.acks.front().second;
      q.acks.pop_front();
    }
    if (q.inflight >= config_.rc_inflight_cap && !q.acks.empty()) {
      t = std::max(t, q.acks.front().first);
    }
  }
  if (q.pace) {
    q.pace->refill(now);
    t = std::max(t, q.pace->wake(1.0));
  }
  ContainerState& c = container(q.owner);
  const double wire = wire_.wire_bytes(h.verb, q.mode, h.payload);
  if (c.max_bucket && wire > 0.0) {
    c.max_bucket->refill(now);
    t = std::max(t, c.max_bucket->wake(wire));
  }
  if (c.min_bucket) {
    c.min_bucket->refill(now);
    if (c.min_bucket->tokens >= wire) prio_class = 0;
  }
  if (q.deprioritized && prio_class != 0) prio_class = 2;
  return t;
}

void Rnic::serve_turn(Qp& q, double tick_end) {
  ContainerState& c = container(q.owner);
  while (clock_ < tick_end && q.deficit > 0.0) {
    int pc = 1;
    if (wake_time(q, clock_, pc) > clock_) break;
    Batch& b = q.queue.front();
    const double base = base_service_us(b.verb, q.mode, b.payload);
    const double wire = wire_.wire_bytes(b.verb, q.mode, b.payload);

    std::uint64_t limit = b.count;
    const bool windowed = q.mode == TransportMode::kRC && verb_acked(b.verb);
    if (windowed) {
      limit = std::min<std::uint64_t>(limit, config_.rc_inflight_cap - q.inflight);
    }
    if (q.pace) {
      limit = std::min<std::uint64_t>(limit, static_cast<std::uint64_t>(q.pace->tokens));
    }
    if (c.max_bucket && wire > 0.0) {
      limit = std::min<std::uint64_t>(limit,
                                      static_cast<std::uint64_t>(c.max_bucket->tokens / wire));
    }
    if (limit == 0) break;

    // First request pays any pending turn/WQE/MTT penalties.
    double p0 = q.turn_penalty_us;
    if (b.wqe_miss) p0 += config_.wqe_miss_penalty_us;
    std::uint64_t mtt_hits = 0, mtt_misses = 0;
    if (b.addressed) {
      if (mtt_.lookup(mtt_key(q.owner, b.page))) {
        ++mtt_hits;
      } else {
        ++mtt_misses;
        p0 += config_.mtt_miss_penalty_us;
      }
    }
    const double start0 = clock_;
    const double c0 = base + p0;
    const double clock1 = start0 + c0;
    const double def1 = q.deficit - c0;

    std::uint64_t extra = 0;
    if (limit > 1 && def1 > 0.0 && clock1 < tick_end && !(b.addressed && b.stride != 0)) {
      const auto by_deficit = static_cast<std::uint64_t>(std::ceil(def1 / base));
      const auto by_time = static_cast<std::uint64_t>(std::ceil((tick_end - clock1) / base));
      extra = std::min({limit - 1, by_deficit, by_time});
    }
    if (b.addressed && extra > 0) mtt_hits += extra;  // same page, now resident

    const std::uint64_t served = 1 + extra;
    const double ex = static_cast<double>(extra);
    const double lat0 = config_.base_latency_us + (start0 - b.ready_at) + p0;
    double lat_sum = lat0;
    double lat_max = lat0;
    if (extra > 0) {
      const double first = config_.base_latency_us + (clock1 - b.ready_at);
      const double last = first + (ex - 1.0) * base;
      lat_sum += ex * (first + last) / 2.0;
      lat_max = std::max(lat_max, last);
    }

    clock_ = clock1 + ex * base;
    const double spent = c0 + ex * base;
    q.deficit -= spent;
    q.turn_penalty_us = 0.0;
    c.busy += spent;

    Completion done;
    done.qp = q.id;
    done.owner = q.owner;
    done.verb = b.verb;
    done.mode = q.mode;
    done.count = served;
    done.payload_bytes_each = b.verb == VerbKind::kRecv ? 0 : b.payload;
    done.wire_bytes_total = wire * static_cast<double>(served);
    done.latency_sum_us = lat_sum;
    done.latency_max_us = lat_max;
    done.ready_at_us = b.ready_at;
    done.end_us = clock_;

    if (b.addressed) {
      emit(CacheAccessEvent{q.owner, CacheKind::kMtt, mtt_hits, mtt_misses});
    }
    const bool inbound = verb_enters_rx_buffer(b.verb);

    b.count -= served;
    b.page += served * b.stride;
    b.wqe_miss = false;
    if (b.count == 0) q.queue.pop_front();
    q.queued -= served;
    if (windowed) {
      q.inflight += served;
      // A READ response is its own acknowledgement.
      const double ack = done.verb == VerbKind::kRead ? 0.0 : config_.rc_ack_delay_us;
      q.acks.emplace_back(clock_ + ack, served);
    }
    if (q.pace) q.pace->tokens -= static_cast<double>(served);
    if (c.max_bucket && wire > 0.0) c.max_bucket->tokens -= done.wire_bytes_total;
    if (c.min_bucket) {
      c.min_bucket->tokens = std::max(0.0, c.min_bucket->tokens - done.wire_bytes_total);
    }
    if (q.queue.empty()) set_backlogged(q, false, clock_);

    total_wire_bytes_ += done.wire_bytes_total;
    grants_.push_back(Grant{q.id, done.wire_bytes_total, spent, served});
    if (inbound) rx_ingress(done.wire_bytes_total, static_cast<double>(served), q.id);

    emit(done);
    if (c.handler) c.handler(done);
  }
}

const std::vector<Grant>& Rnic::tx_schedule_cycle(SimTime tick) {
  const double t0 = tick.us();
  const double t1 = t0 + 1.0;
  grants_.clear();
  if (clock_ < t0) clock_ = t0;

  if (idle_until_ >= t1) clock_ = std::max(clock_, t1);
  while (clock_ < t1 && !qps_.empty()) {
    if (cursor_ >= qps_.size()) cursor_ = 0;
    Qp& cur = *qps_[cursor_];
    if (cur.in_turn) {
      int pc = 1;
      const double w = wake_time(cur, clock_, pc);
      if (w <= clock_ && cur.deficit > 0.0) {
        serve_turn(cur, t1);
        continue;
      }
      cur.in_turn = false;
      if (w > clock_) cur.deficit = std::min(cur.deficit, 0.0);
      cursor_ = (cursor_ + 1) % qps_.size();
    }

    const std::size_t n = qps_.size();
    std::size_t best = n;
    int best_class = 3;
    double min_wake = kNever;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t idx = (cursor_ + i) % n;
      int pc = 1;
      const double w = wake_time(*qps_[idx], clock_, pc);
      if (w <= clock_) {
        if (pc < best_class) {
          best = idx;
          best_class = pc;
          if (pc == 0 || (pc == 1 && min_rate_count_ == 0)) break;
        }
      } else {
        min_wake = std::min(min_wake, w);
      }
    }
    if (best == n) {
      if (min_wake < t1) {
        clock_ = min_wake;
        continue;
      }
      idle_until_ = min_wake;
      clock_ = t1;
      break;
    }
    cursor_ = best;
    Qp& q = *qps_[best];
    q.in_turn = true;
    q.deficit += config_.rr_slot_us;
    const bool hit = icm_.lookup(q.id);
    emit(CacheAccessEvent{q.owner, CacheKind::kIcm, hit ? 1u : 0u, hit ? 0u : 1u});
    if (!hit) q.turn_penalty_us += config_.icm_miss_penalty_us;
    if (q.deficit > 0.0) serve_turn(q, t1);
  }

  // RX ingress for this tick.
  const double arr = tick_arrival_bytes_;
  const double total_bytes = pfc_.occupancy_bytes() + arr;
  const double total_verbs = rx_buffer_verbs_ + tick_arrival_verbs_;
  const double mean = total_verbs > 0.0 ? total_bytes / total_verbs : 0.0;
  const double drain = std::min(config_.rx_bytes_per_us(), config_.rx_verbs_per_us * mean);
  const bool was_paused = pfc_.paused();
  const bool emitted = pfc_.tick(arr, drain);
  rx_buffer_verbs_ = total_bytes > 0.0 ? total_verbs * pfc_.occupancy_bytes() / total_bytes : 0.0;
  if (emitted) {
    ContainerId who = 0;
    double most = -1.0;
    for (const auto& [owner, bytes] : tick_arrivals_by_owner_) {
      if (bytes > most) {
        most = bytes;
        who = owner;
      }
    }
    emit(PauseFrameEvent{who, t0});
  }
  if (was_paused != pfc_.paused()) mark_dirty();
  tick_arrival_bytes_ = 0.0;
  tick_arrival_verbs_ = 0.0;
  tick_arrivals_by_owner_.clear();
  return grants_;
}

void Rnic::rx_ingress(double bytes, double verbs, QpId from_qp) {
  const Qp* q = find_qp(from_qp);
  const ContainerId owner = q ? q->owner : 0;
  tick_arrival_bytes_ += bytes;
  tick_arrival_verbs_ += verbs;
  tick_arrivals_by_owner_[owner] += bytes;
  if (q) container(owner).rx_bytes += bytes;
}

SimTime Rnic::next_active_tick(SimTime from) const {
  if (pfc_.occupancy_bytes() > 0.0 || tick_arrival_bytes_ > 0.0) return from;
  const double f = from.us();
  double wake = idle_until_;
  if (clock_ > f) wake = std::max(wake, std::floor(clock_));
  if (wake <= f) return from;
  if (wake == kNever) return SimTime{std::numeric_limits<std::int64_t>::max() / 2};
  return SimTime{static_cast<std::int64_t>(std::floor(wake))};
}

void Rnic::set_pace(QpId id, double verbs_per_second) {
  Qp& q = get_qp(id);
  TokenBucket b;
  b.rate_per_us = verbs_per_second / 1e6;
  b.depth = std::max(1.0, b.rate_per_us * config_.rr_slot_us);
  b.tokens = b.depth;
  b.updated = clock_;
  q.pace = b;
  q.pace_rate = verbs_per_second;
  if (q.state != QpState::kBlocked) q.state = QpState::kPaced;
  mark_dirty();
}

void Rnic::set_blocked(QpId id, bool blocked) {
  Qp& q = get_qp(id);
  if (blocked) {
    q.state = QpState::kBlocked;
  } else {
    q.state = q.pace ? QpState::kPaced : QpState::kActive;
  }
  mark_dirty();
}

void Rnic::release(QpId id) {
  Qp& q = get_qp(id);
  q.pace.reset();
  q.pace_rate = 0.0;
  q.state = QpState::kActive;
  if (q.deprioritized) {
    q.deprioritized = false;
    --deprioritized_count_;
  }
  mark_dirty();
}

void Rnic::set_deprioritized(QpId id, bool deprioritized) {
  Qp& q = get_qp(id);
  if (q.deprioritized != deprioritized) {
    q.deprioritized = deprioritized;
    if (deprioritized) {
      ++deprioritized_count_;
    } else {
      --deprioritized_count_;
    }
  }
  mark_dirty();
}

void Rnic::block_qp_creation(ContainerId owner, bool blocked) {
  container(owner).creation_blocked = blocked;
}

bool Rnic::qp_creation_blocked(ContainerId owner) const {
  auto it = containers_.find(owner);
  return it != containers_.end() && it->second->creation_blocked;
}

void Rnic::set_rate_limits(ContainerId owner, std::optional<double> max_bytes_per_s,
                           std::optional<double> min_bytes_per_s) {
  ContainerState& c = container(owner);
  const double burst_floor = static_cast<double>(config_.max_message_bytes) + 512.0;
  auto make = [&](double rate) {
    TokenBucket b;
    b.rate_per_us = rate / 1e6;
    b.depth = std::max(b.rate_per_us * config_.rr_slot_us, burst_floor);
    b.tokens = std::min(b.depth, burst_floor);
    b.updated = clock_;
    return b;
  };
  if (max_bytes_per_s) {
    c.max_bucket = make(*max_bytes_per_s);
  } else {
    c.max_bucket.reset();
  }
  const bool had_min = c.min_bucket.has_value();
  if (min_bytes_per_s && *min_bytes_per_s > 0.0) {
    c.min_bucket = make(*min_bytes_per_s);
  } else {
    c.min_bucket.reset();
  }
  if (had_min && !c.min_bucket) --min_rate_count_;
  if (!had_min && c.min_bucket) ++min_rate_count_;
  mark_dirty();
}

std::optional<QpInfo> Rnic::qp_info(QpId id) const {
  const Qp* q = find_qp(id);
  if (!q) return std::nullopt;
  QpInfo info;
  info.id = q->id;
  info.owner = q->owner;
  info.mode = q->mode;
  info.state = q->state;
  info.pace_rate = q->pace_rate;
  info.deprioritized = q->deprioritized;
  info.queued = q->queued;
  info.inflight = q->inflight;
  return info;
}

std::vector<QpId> Rnic::qps_of(ContainerId owner) const {
  std::vector<QpId> out;
  for (const auto& q : qps_) {
    if (q->owner == owner) out.push_back(q->id);
  }
  return out;
}

std::size_t Rnic::active_qp_count(ContainerId owner) const {
  auto it = containers_.find(owner);
  return it == containers_.end() ? 0 : it->second->qp_count;
}

ContainerGauges Rnic::gauges(ContainerId owner, double now_us) {
  ContainerState& c = container(owner);
  integrate(c, now_us);
  ContainerGauges g;
  g.backlog_qp_us = c.backlog_integral;
  g.busy_us = c.busy;
  g.rx_bytes = c.rx_bytes;
  g.qp_count = c.qp_count;
  return g;
}

}  // namespace rnicsim
