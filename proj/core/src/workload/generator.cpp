#include "rnicsim/workload/generator.hpp"

#include <algorithm>

#include "rnicsim/rnic/errors.hpp"

namespace rnicsim {

WorkloadGenerator::WorkloadGenerator(ContainerId owner, WorkloadSpec spec, Rnic& rnic,
                                     Simulator& sim, RngStream rng, std::function<void()> wake)
    : owner_(owner),
      spec_(std::move(spec)),
      rnic_(rnic),
      sim_(sim),
      rng_(rng),
      wake_(std::move(wake)) {}

std::optional<SimTime> WorkloadGenerator::stop_time() const {
  if (!spec_.duration) return std::nullopt;
  return spec_.start + *spec_.duration;
}

void WorkloadGenerator::install() {
  if (spec_.kind == WorkloadKind::kIdle) return;
  rnic_.set_completion_handler(owner_, [this](const Completion& c) { on_completion(c); });
  const auto tag = static_cast<std::int64_t>(owner_);
  sim_.schedule(spec_.start, EventKind::kWorkloadPhase, [this] { begin(); }, tag);
  for (const RampStep& step : spec_.qp_ramp) {
    const std::uint32_t target = step.qps;
    sim_.schedule(std::max(step.at, sim_.now()), EventKind::kWorkloadPhase,
                  [this, target] { resize(target); }, tag);
  }
  if (auto stop = stop_time()) {
    sim_.schedule(*stop, EventKind::kWorkloadPhase, [this] { finish(); }, tag);
  }
}

void WorkloadGenerator::begin() {
  running_ = true;
  if (spec_.qp_ramp.empty()) {
    resize(spec_.qps);
  }
  const double now = sim_.now().us();
  for (const auto& [qp, cursor] : qps_) fill(qp, rnic_.config().max_outstanding_wqes, now);
  if (wake_) wake_();
}

void WorkloadGenerator::finish() { running_ = false; }

void WorkloadGenerator::resize(std::uint32_t target) {
  const double now = sim_.now().us();
  while (qps_.size() < target) {
    QpId id = 0;
    try {
      id = rnic_.create_qp(owner_, spec_.mode);
    } catch (const QpCapacityExhausted&) {
      ++creation_failures_;
      break;
    } catch (const QpCreationBlocked&) {
      ++creation_failures_;
      break;
    }
    qps_.emplace(id, QpCursor{});
    if (running_) fill(id, rnic_.config().max_outstanding_wqes, now);
  }
  while (qps_.size() > target) {
    auto last = std::prev(qps_.end());
    rnic_.destroy_qp(last->first);
    qps_.erase(last);
  }
  if (wake_) wake_();
}

void WorkloadGenerator::post_read(QpId qp, double at_us) {
  WorkRequest wr;
  wr.verb = VerbKind::kRead;
  wr.payload_bytes = spec_.message_bytes;
  wr.remote_page = rng_.uniform_below(spec_.working_set_pages);
  wr.posted_at_us = at_us;
  rnic_.post_work_request(qp, wr);
  ++posted_;
}

void WorkloadGenerator::fill(QpId qp, std::uint64_t count, double at_us) {
  auto info = rnic_.qp_info(qp);
  if (!info || info->state == QpState::kBlocked || count == 0) return;
  QpCursor& cur = qps_[qp];

  WorkRequest wr;
  wr.posted_at_us = at_us;
  wr.payload_bytes = spec_.message_bytes;
  switch (spec_.kind) {
    case WorkloadKind::kIdle:
      return;
    case WorkloadKind::kReadLat:
      if (info->queued == 0 && info->inflight == 0 && qp == qps_.begin()->first) {
        post_read(qp, at_us);
      }
      return;
    case WorkloadKind::kWriteBw:
    case WorkloadKind::kVerbsFlood:
    case WorkloadKind::kVerbsAmplification: {
      wr.verb = primary_verb(spec_);
      if (verb_addressed(wr.verb)) wr.remote_page = qp;
      posted_ += rnic_.post_batch(qp, wr, count, 0);
      return;
    }
    case WorkloadKind::kCacheDepletion: {
      wr.verb = spec_.verb;
      wr.remote_page = next_page_;
      const std::uint64_t n = rnic_.post_batch(qp, wr, count, spec_.page_stride);
      next_page_ += n * spec_.page_stride;
      posted_ += n;
      return;
    }
    case WorkloadKind::kQueueFlood: {
      const std::uint64_t b = spec_.batch;
      while (count > 0) {
        const std::uint64_t pos = cur.sequence % (2 * b);
        const std::uint64_t chunk = std::min(count, b - pos % b);
        wr.verb = pos < b ? VerbKind::kSend : VerbKind::kRecv;
        const std::uint64_t n = rnic_.post_batch(qp, wr, chunk, 0);
        cur.sequence += n;
        posted_ += n;
        count -= n;
        if (n < chunk) break;
      }
      return;
    }
  }
}

void WorkloadGenerator::on_completion(const Completion& c) {
  if (!running_ || !qps_.count(c.qp)) return;
  if (spec_.kind == WorkloadKind::kReadLat) {
    post_read(c.qp, c.ready_at_us + c.latency_max_us);
    return;
  }
  fill(c.qp, c.count, c.end_us);
}

}  // namespace rnicsim
