#include "rnicsim/defense/htverbs.hpp"

#include <algorithm>
#include <cmath>

#include "rnicsim/defense/percentile.hpp"
#include "rnicsim/telemetry/csv_export.hpp"

namespace rnicsim {

std::string_view to_string(Tier t) {
  switch (t) {
    case Tier::kHot: return "hot";
    case Tier::kWarm: return "warm";
    case Tier::kCold: return "cold";
  }
  return "?";
}

std::string_view to_string(ResourceClass r) {
  switch (r) {
    case ResourceClass::kTxPipeline: return "tx_pipeline";
    case ResourceClass::kRxPipeline: return "rx_pipeline";
    case ResourceClass::kMtt: return "mtt";
    case ResourceClass::kIcm: return "icm";
    case ResourceClass::kWqeCache: return "wqe_cache";
    case ResourceClass::kQpTable: return "qp_table";
  }
  return "?";
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kTxOcc: return "tx_occ";
    case Metric::kRxOcc: return "rx_occ";
    case Metric::kMttMiss: return "mtt_miss_rate";
    case Metric::kIcmMiss: return "icm_miss_rate";
    case Metric::kWqeMiss: return "wqe_miss_rate";
    case Metric::kQpCount: return "qp_count";
    case Metric::kQpCreateRate: return "qp_create_rate";
    case Metric::kEfficiency: return "efficiency";
  }
  return "?";
}

std::string_view to_string(ActionKind k) {
  switch (k) {
    case ActionKind::kPace: return "pace";
    case ActionKind::kDeprioritize: return "deprioritize";
    case ActionKind::kBlock: return "block";
    case ActionKind::kRelease: return "release";
  }
  return "?";
}

Metric metric_of(ResourceClass r) {
  switch (r) {
    case ResourceClass::kTxPipeline: return Metric::kTxOcc;
    case ResourceClass::kRxPipeline: return Metric::kRxOcc;
    case ResourceClass::kMtt: return Metric::kMttMiss;
    case ResourceClass::kIcm: return Metric::kIcmMiss;
    case ResourceClass::kWqeCache: return Metric::kWqeMiss;
    case ResourceClass::kQpTable: return Metric::kQpCount;
  }
  return Metric::kTxOcc;
}

std::string evidence_to_string(std::uint8_t evidence) {
  std::string out;
  if (evidence & kExcessiveQpCreation) out = "excessive_qp_creation";
  if (evidence & kPressureWithoutThroughput) {
    if (!out.empty()) out += '|';
    out += "pressure_without_throughput";
  }
  return out.empty() ? "none" : out;
}

std::vector<DefenseSample> make_samples(const std::vector<TelemetrySnapshot>& tick,
                                        double link_bps) {
  std::vector<DefenseSample> out;
  for (const auto& s : tick) {
    if (s.qp_count == 0) continue;
    DefenseSample d;
    d.container = s.container;
    auto set = [&d](Metric m, double v) { d.values[static_cast<std::size_t>(m)] = v; };
    set(Metric::kTxOcc, s.tx_occupancy);
    set(Metric::kRxOcc, s.rx_occupancy);
    set(Metric::kMttMiss, s.mtt_miss_rate);
    set(Metric::kIcmMiss, s.icm_miss_rate);
    set(Metric::kWqeMiss, s.wqe_miss_rate);
    set(Metric::kQpCount, static_cast<double>(s.qp_count));
    set(Metric::kQpCreateRate, s.qp_create_rate);
    const double held = s.tx_occupancy * link_bps;
    set(Metric::kEfficiency, held > 0.0 ? s.goodput_bps / held : 1.0);
    out.push_back(d);
  }
  return out;
}

ThresholdState update_thresholds(const std::deque<std::vector<DefenseSample>>& window,
                                 double hot_percentile, double cold_percentile) {
  ThresholdState st;
  std::array<std::vector<double>, kMetricCount> pools;
  for (const auto& tick : window) {
    for (const auto& s : tick) {
      if (!s.pooled) continue;
      ++st.samples;
      for (std::size_t m = 0; m < kMetricCount; ++m) pools[m].push_back(s.values[m]);
    }
  }
  for (std::size_t m = 0; m < kMetricCount; ++m) {
    st.cuts[m].hot = nearest_rank_percentile(pools[m], hot_percentile);
    st.cuts[m].cold = nearest_rank_percentile(pools[m], cold_percentile);
  }
  return st;
}

Tier classify_value(double value, const Cut& cut) {
  if (value >= cut.hot) return Tier::kHot;
  if (value <= cut.cold) return Tier::kCold;
  return Tier::kWarm;
}

std::array<Tier, kResourceClassCount> classify(const DefenseSample& sample,
                                               const ThresholdState& thresholds) {
  std::array<Tier, kResourceClassCount> out{};
  for (std::size_t r = 0; r < kResourceClassCount; ++r) {
    const Metric m = metric_of(static_cast<ResourceClass>(r));
    out[r] = classify_value(sample.at(m), thresholds.at(m));
  }
  return out;
}

std::vector<std::string> HtVerbsParams::validate() const {
  std::vector<std::string> errors;
  if (window_len == 0) errors.emplace_back("htverbs.window_len must be at least 1");
  if (persistence_intervals == 0) {
    errors.emplace_back("htverbs.persistence_intervals must be at least 1");
  }
  if (!(cold_percentile > 0.0 && cold_percentile <= hot_percentile && hot_percentile <= 100.0)) {
    errors.emplace_back("htverbs percentiles must satisfy 0 < cold <= hot <= 100");
  }
  if (!(efficiency_floor > 0.0)) errors.emplace_back("htverbs.efficiency_floor must be positive");
  if (!(hot_restrict_fraction > 0.0 && hot_restrict_fraction <= 1.0)) {
    errors.emplace_back("htverbs.hot_restrict_fraction must be in (0, 1]");
  }
  return errors;
}

HtVerbsController::HtVerbsController(HtVerbsParams params, const QosPolicy* weights)
    : params_(params), weights_(weights) {}

std::uint8_t HtVerbsController::evidence_for(const DefenseSample& s) const {
  std::uint8_t ev = kEvidenceNone;
  const double rate = s.at(Metric::kQpCreateRate);
  const Cut& rc = thresholds_.at(Metric::kQpCreateRate);
  if (rate > 0.0 && rate >= rc.hot && rate > rc.cold) ev |= kExcessiveQpCreation;

  auto hot = [&](Metric m) {
    const Cut& c = thresholds_.at(m);
    return s.at(m) >= c.hot && s.at(m) > c.cold;
  };
  const double eff = s.at(Metric::kEfficiency);
  const bool starved = eff < params_.efficiency_floor;
  if ((hot(Metric::kTxOcc) || hot(Metric::kRxOcc)) && starved) ev |= kPressureWithoutThroughput;
  return ev;
}

std::vector<ThrottleAction> HtVerbsController::on_tick(
    SimTime t, const std::vector<TelemetrySnapshot>& tick, const Rnic& rnic) {
  std::vector<DefenseSample> samples = make_samples(tick, rnic.config().link_gbps * 1e9);
  const bool multi_tenant = samples.size() > 1;
  for (auto& s : samples) {
    auto it = state_.find(s.container);
    const bool flagged = it != state_.end() && it->second.verdict.flagged;
    s.pooled = multi_tenant && !flagged;
  }
  window_.push_back(samples);
  while (window_.size() > params_.window_len) window_.pop_front();
  thresholds_ = update_thresholds(window_, params_.hot_percentile, params_.cold_percentile);

  std::vector<ContainerId> active;
  for (const auto& s : samples) active.push_back(s.container);
  const auto shares = ets_fair_shares(active, weights_);

  std::vector<ThrottleAction> out;
  tiers_.clear();
  for (const auto& s : samples) {
    State& st = state_[s.container];
    st.verdict.container = s.container;
    const auto tiers = classify(s, thresholds_);
    tiers_[s.container] = tiers;

    const std::uint8_t ev =
        (multi_tenant && thresholds_.samples > 0) ? evidence_for(s) : std::uint8_t{kEvidenceNone};
    st.verdict.evidence = ev;
    if (ev != kEvidenceNone) {
      ++st.verdict.consecutive_intervals;
      st.clear_streak = 0;
      if (st.verdict.consecutive_intervals >= params_.persistence_intervals) {
        st.verdict.flagged = true;
        st.ever_flagged = true;
      }
    } else {
      st.verdict.consecutive_intervals = 0;
      ++st.clear_streak;
      if (st.verdict.flagged && st.clear_streak >= params_.persistence_intervals) {
        st.verdict.flagged = false;
        release(t, s.container, st, out);
      }
    }
    if (st.verdict.flagged) {
      enforce(t, s, st, tiers, shares.at(s.container), rnic, out);
    }
  }

  // Flagged containers that no longer own QPs are released outright.
  std::vector<ContainerId> seen = active;
  std::sort(seen.begin(), seen.end());
  for (auto& [id, st] : state_) {
    if (std::binary_search(seen.begin(), seen.end(), id)) continue;
    st.verdict.evidence = kEvidenceNone;
    st.verdict.consecutive_intervals = 0;
    if (st.verdict.flagged || st.restricted || st.creation_blocked) {
      st.verdict.flagged = false;
      release(t, id, st, out);
    }
  }

  verdicts_.clear();
  for (const auto& [id, st] : state_) verdicts_[id] = st.verdict;
  log_.insert(log_.end(), out.begin(), out.end());
  return out;
}

void HtVerbsController::enforce(SimTime t, const DefenseSample& s, State& st,
                                const std::array<Tier, kResourceClassCount>& tiers,
                                double fair_share, const Rnic& rnic,
                                std::vector<ThrottleAction>& out) {
  const std::uint8_t ev = st.verdict.evidence;
  const auto qps = rnic.qps_of(s.container);
  if (!st.restricted) {
    st.restricted = true;
    st.paced.clear();
  }
  const bool hot_tx = tiers[static_cast<std::size_t>(ResourceClass::kTxPipeline)] == Tier::kHot;
  const double factor = hot_tx ? params_.hot_restrict_fraction : 1.0;
  const double n = static_cast<double>(std::max<std::size_t>(qps.size(), 1));
  for (QpId qp : qps) {
    if (st.paced.count(qp)) continue;
    ThrottleAction a;
    a.t = t;
    a.container = s.container;
    a.qp = qp;
    a.evidence = ev;
    if (params_.enforcement == Enforcement::kDeprioritize) {
      a.kind = ActionKind::kDeprioritize;
    } else {
      const double cost = std::max(rnic.estimated_service_us(qp), 1e-3);
      a.kind = ActionKind::kPace;
      a.pace_rate = fair_share * factor * 1e6 / cost / n;
    }
    st.paced[qp] = a.pace_rate;
    out.push_back(a);
  }
  const bool hot_table = tiers[static_cast<std::size_t>(ResourceClass::kQpTable)] == Tier::kHot;
  if (!st.creation_blocked && hot_table && (ev & kExcessiveQpCreation)) {
    st.creation_blocked = true;
    ThrottleAction a;
    a.t = t;
    a.container = s.container;
    a.kind = ActionKind::kBlock;
    a.evidence = ev;
    out.push_back(a);
  }
}

void HtVerbsController::release(SimTime t, ContainerId id, State& st,
                                std::vector<ThrottleAction>& out) {
  for (const auto& [qp, rate] : st.paced) {
    ThrottleAction a;
    a.t = t;
    a.container = id;
    a.qp = qp;
    a.kind = ActionKind::kRelease;
    out.push_back(a);
  }
  if (st.creation_blocked) {
    ThrottleAction a;
    a.t = t;
    a.container = id;
    a.kind = ActionKind::kRelease;
    out.push_back(a);
  }
  st.paced.clear();
  st.restricted = false;
  st.creation_blocked = false;
}

std::optional<std::array<Tier, kResourceClassCount>> HtVerbsController::tiers_of(
    ContainerId id) const {
  auto it = tiers_.find(id);
  if (it == tiers_.end()) return std::nullopt;
  return it->second;
}

bool HtVerbsController::ever_flagged(ContainerId id) const {
  auto it = state_.find(id);
  return it != state_.end() && it->second.ever_flagged;
}

void apply_actions(Rnic& rnic, const std::vector<ThrottleAction>& actions) {
  for (const auto& a : actions) {
    if (!a.qp) {
      if (a.kind == ActionKind::kBlock) rnic.block_qp_creation(a.container, true);
      if (a.kind == ActionKind::kRelease) rnic.block_qp_creation(a.container, false);
      continue;
    }
    if (!rnic.qp_info(*a.qp)) continue;  // destroyed since the decision
    switch (a.kind) {
      case ActionKind::kPace: rnic.set_pace(*a.qp, a.pace_rate); break;
      case ActionKind::kDeprioritize: rnic.set_deprioritized(*a.qp, true); break;
      case ActionKind::kBlock: rnic.set_blocked(*a.qp, true); break;
      case ActionKind::kRelease: rnic.release(*a.qp); break;
    }
  }
}

std::string decision_log_csv(const std::vector<ThrottleAction>& actions) {
  std::string out = "t_us,container,qp,action,pace_rate,evidence\n";
  for (const auto& a : actions) {
    out += std::to_string(a.t.ticks) + ',' + std::to_string(a.container) + ',' +
           (a.qp ? std::to_string(*a.qp) : std::string()) + ',' +
           std::string(to_string(a.kind)) + ',' + format_number(a.pace_rate) + ',' +
           evidence_to_string(a.evidence) + '\n';
  }
  return out;
}

}  // namespace rnicsim
