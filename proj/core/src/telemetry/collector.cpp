#include "rnicsim/telemetry/collector.hpp"

#include <algorithm>
#include <type_traits>

#include "rnicsim/engine/check.hpp"

namespace rnicsim {

std::optional<double> AmplificationEntry::ratio() const {
  if (count == 0 || payload_bytes <= 0.0) return std::nullopt;
  return received_bytes / payload_bytes;
}

TelemetryCollector::TelemetryCollector(SimTime period) : period_(period) {
  RNICSIM_CHECK(period.ticks > 0, "telemetry period must be positive");
  for (VerbKind v : kAllVerbs) {
    for (TransportMode m : {TransportMode::kRC, TransportMode::kUC}) {
      amp_[index_of(v)][index_of(m)].verb = v;
      amp_[index_of(v)][index_of(m)].mode = m;
    }
  }
}

void TelemetryCollector::add_container(ContainerId id) {
  if (per_.emplace(id, PerContainer{}).second) {
    order_.push_back(id);
    std::sort(order_.begin(), order_.end());
  }
}

TelemetryCollector::PerContainer& TelemetryCollector::slot(ContainerId id) {
  auto it = per_.find(id);
  if (it == per_.end()) {
    add_container(id);
    it = per_.find(id);
  }
  return it->second;
}

void TelemetryCollector::record(const CounterEvent& event) {
  std::visit(
      [this](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, Completion>) {
          Interval& iv = slot(e.owner).cur;
          const double payload =
              static_cast<double>(e.payload_bytes_each) * static_cast<double>(e.count);
          iv.payload += payload;
          iv.wire += e.wire_bytes_total;
          iv.latency_sum += e.latency_sum_us;
          iv.latency_max = std::max(iv.latency_max, e.latency_max_us);
          iv.verbs += e.count;
          slot(e.owner).payload_total += payload;
          AmplificationEntry& a = amp_[index_of(e.verb)][index_of(e.mode)];
          a.received_bytes += e.wire_bytes_total;
          a.payload_bytes += payload;
          a.count += e.count;
        } else if constexpr (std::is_same_v<E, CacheAccessEvent>) {
          Interval& iv = slot(e.owner).cur;
          const auto k = static_cast<std::size_t>(e.cache);
          iv.hits[k] += e.hits;
          iv.misses[k] += e.misses;
        } else if constexpr (std::is_same_v<E, PauseFrameEvent>) {
          ++total_pauses_;
          auto it = per_.find(e.attributed_to);
          if (it != per_.end()) {
            ++it->second.cur.pauses;
            ++it->second.pauses_total;
          }
        } else if constexpr (std::is_same_v<E, QpLifecycleEvent>) {
          if (e.created) ++slot(e.owner).cur.creates;
        } else if constexpr (std::is_same_v<E, QpExhaustedEvent>) {
          PerContainer& pc = slot(e.owner);
          ++pc.cur.exhausted;
          ++pc.exhausted_total;
        }
      },
      event);
}

std::vector<TelemetrySnapshot> TelemetryCollector::snapshot(SimTime t, Rnic& rnic) {
  RNICSIM_CHECK(t > last_cut_, "snapshots must be strictly ordered in time");
  const double span_us = (t - last_cut_).us();
  const double span_s = span_us / 1e6;
  last_cut_ = t;

  std::map<ContainerId, ContainerGauges> now;
  double backlog_total = 0.0;
  for (ContainerId id : order_) {
    if (!rnic.has_container(id)) continue;
    ContainerGauges g = rnic.gauges(id, t.us());
    backlog_total += g.backlog_qp_us - per_[id].last_gauges.backlog_qp_us;
    now.emplace(id, g);
  }

  const double rx_capacity = rnic.config().rx_bytes_per_us() * span_us;
  std::vector<TelemetrySnapshot> out;
  out.reserve(order_.size());
  for (ContainerId id : order_) {
    PerContainer& pc = per_[id];
    const Interval& iv = pc.cur;
    TelemetrySnapshot s;
    s.t = t;
    s.container = id;
    s.payload_bytes = iv.payload;
    s.goodput_bps = iv.payload * 8.0 / span_s;
    s.completed_verbs = iv.verbs;
    s.avg_latency_us = iv.verbs ? iv.latency_sum / static_cast<double>(iv.verbs) : 0.0;
    s.max_latency_us = iv.latency_max;
    auto rate = [&](CacheKind k) {
      const auto i = static_cast<std::size_t>(k);
      const std::uint64_t n = iv.hits[i] + iv.misses[i];
      return n ? static_cast<double>(iv.misses[i]) / static_cast<double>(n) : 0.0;
    };
    s.mtt_miss_rate = rate(CacheKind::kMtt);
    s.icm_miss_rate = rate(CacheKind::kIcm);
    s.wqe_miss_rate = rate(CacheKind::kWqe);
    s.pause_frames_delta = iv.pauses;
    s.qp_create_rate = static_cast<double>(iv.creates) / span_s;
    s.cq_create_rate = s.qp_create_rate;  // one CQ per QP
    s.rcv_bytes = iv.wire;
    s.qp_exhausted_events = iv.exhausted;

    auto g = now.find(id);
    if (g != now.end()) {
      const double backlog = g->second.backlog_qp_us - pc.last_gauges.backlog_qp_us;
      s.tx_occupancy = backlog_total > 0.0 ? backlog / backlog_total : 0.0;
      const double rx = g->second.rx_bytes - pc.last_gauges.rx_bytes;
      s.rx_occupancy = rx_capacity > 0.0 ? std::min(1.0, rx / rx_capacity) : 0.0;
      s.qp_count = g->second.qp_count;
      pc.last_gauges = g->second;
    }
    pc.cur = Interval{};
    out.push_back(s);
    history_.push_back(s);
  }
  return out;
}

std::vector<TelemetrySnapshot> TelemetryCollector::history_of(ContainerId id) const {
  std::vector<TelemetrySnapshot> out;
  for (const auto& s : history_) {
    if (s.container == id) out.push_back(s);
  }
  return out;
}

std::optional<double> TelemetryCollector::amplification_ratio(VerbKind verb,
                                                              TransportMode mode) const {
  return amp_[index_of(verb)][index_of(mode)].ratio();
}

std::optional<double> TelemetryCollector::amplification_ratio(VerbKind verb) const {
  AmplificationEntry sum;
  for (const auto& e : amp_[index_of(verb)]) {
    sum.received_bytes += e.received_bytes;
    sum.payload_bytes += e.payload_bytes;
    sum.count += e.count;
  }
  return sum.ratio();
}

AmplificationReport TelemetryCollector::amplification_report() const {
  AmplificationReport r;
  for (const auto& row : amp_) {
    for (const auto& e : row) {
      if (e.count > 0) r.entries.push_back(e);
    }
  }
  return r;
}

double TelemetryCollector::total_payload_bytes(ContainerId id) const {
  auto it = per_.find(id);
  return it == per_.end() ? 0.0 : it->second.payload_total;
}

std::uint64_t TelemetryCollector::pause_frames_of(ContainerId id) const {
  auto it = per_.find(id);
  return it == per_.end() ? 0 : it->second.pauses_total;
}

std::uint64_t TelemetryCollector::qp_exhausted_events(ContainerId id) const {
  auto it = per_.find(id);
  return it == per_.end() ? 0 : it->second.exhausted_total;
}

}  // namespace rnicsim
