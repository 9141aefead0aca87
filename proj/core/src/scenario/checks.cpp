#include "rnicsim/scenario/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace rnicsim {

namespace {

using CheckFn = std::function<void(const CheckParams&, const std::vector<RunResult>&,
                                   CheckOutcome&)>;

SimTime at_s(double s) { return SimTime::from_seconds(s); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

ContainerId cid(double v) { return static_cast<ContainerId>(std::llround(v)); }

double mean_of(const RunResult& r, ContainerId id, SimTime from, SimTime to,
               double TelemetrySnapshot::*field) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& s : r.telemetry) {
    if (s.container == id && s.t > from && s.t <= to) {
      sum += s.*field;
      ++n;
    }
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

std::vector<ContainerId> ids_param(const CheckParams& p, const char* list_key,
                                   const char* single_key) {
  std::vector<ContainerId> out;
  if (p.lists.count(list_key)) {
    for (double v : p.list(list_key)) out.push_back(cid(v));
  } else if (p.numbers.count(single_key)) {
    out.push_back(cid(p.number(single_key)));
  }
  return out;
}

// Attacker QP count of a sweep run: 0 when the sweep container is idle.
std::uint32_t qps_of_run(const RunResult& r, ContainerId id) {
  const ContainerSpec* c = r.config.find(id);
  if (!c || c->workload.kind == WorkloadKind::kIdle) return 0;
  return c->workload.qps;
}

void fair_share_curve(const CheckParams& p, const std::vector<RunResult>& runs, CheckOutcome& o) {
  const ContainerId victim = cid(p.number("victim"));
  const ContainerId attacker = cid(p.number("attacker"));
  const double nv = p.number_or("victim_qps", 1);
  const double tol = p.number_or("tolerance", 0.05);
  const double min_drop = p.number_or("min_drop", 0.85);
  const SimTime warm = at_s(p.number_or("warmup_s", 0.2));

  const RunResult* base = nullptr;
  for (const auto& r : runs) {
    if (qps_of_run(r, attacker) == 0) base = &r;
  }
  if (!base) {
    o.detail = "no run with the attacker idle to serve as baseline";
    return;
  }
  const double g0 = base->mean_goodput(victim, warm, base->config.duration);
  o.metrics["baseline_gbps"] = g0 / 1e9;
  bool ok = g0 > 0.0;
  std::uint32_t max_n = 0;
  double drop_at_max = 0.0;
  std::string bad;
  for (const auto& r : runs) {
    const std::uint32_t n = qps_of_run(r, attacker);
    if (n == 0) continue;
    const double ratio = r.mean_goodput(victim, warm, r.config.duration) / g0;
    const double expected = nv / (nv + n);
    o.metrics["ratio_at_" + std::to_string(n)] = ratio;
    if (std::abs(ratio / expected - 1.0) > tol) {
      ok = false;
      bad += " n=" + std::to_string(n) + " ratio " + fmt(ratio) + " vs " + fmt(expected) + ";";
    }
    if (n >= max_n) {
      max_n = n;
      drop_at_max = 1.0 - ratio;
    }
  }
  o.metrics["drop_at_max"] = drop_at_max;
  if (drop_at_max < min_drop) {
    ok = false;
    bad += " drop at " + std::to_string(max_n) + " QPs is " + fmt(drop_at_max) + ";";
  }
  o.passed = ok;
  o.detail = ok ? "victim share follows n_v/(n_v+n_a) within " + fmt(tol) + ", drop " +
                      fmt(drop_at_max) + " at " + std::to_string(max_n) + " QPs"
                : "mismatch:" + bad;
}

void goodput_drop(const CheckParams& p, const std::vector<RunResult>& runs, CheckOutcome& o) {
  const auto victims = ids_param(p, "victims", "victim");
  const SimTime b0 = at_s(p.number("baseline_from_s"));
  const SimTime b1 = at_s(p.number("baseline_to_s"));
  const SimTime after = at_s(p.number("after_s"));
  const double max_ratio = p.number("max_ratio");
  const bool has_attacker = p.numbers.count("attacker") != 0;
  const ContainerId attacker = has_attacker ? cid(p.number("attacker")) : 0;
  const double att_frac = p.number_or("attacker_max_link_fraction", 1.0);

  bool ok = !victims.empty();
  std::string detail;
  for (const auto& r : runs) {
    const std::string tag = r.label.empty() ? "" : r.label + ": ";
    for (ContainerId v : victims) {
      const double g0 = r.mean_goodput(v, b0, b1);
      const double g1 = r.mean_goodput(v, after, r.config.duration);
      const double ratio = g0 > 0 ? g1 / g0 : 1.0;
      o.metrics[tag + "victim" + std::to_string(v) + "_ratio"] = ratio;
      if (!(ratio <= max_ratio)) {
        ok = false;
        detail += tag + "victim " + std::to_string(v) + " kept " + fmt(ratio) + " of baseline; ";
      }
    }
    if (has_attacker) {
      const double link_bps = r.config.rnic.link_gbps * 1e9;
      double peak = 0.0;
      for (const auto& s : r.series(attacker)) peak = std::max(peak, s.goodput_bps);
      o.metrics[tag + "attacker_peak_link_fraction"] = peak / link_bps;
      if (peak >= att_frac * link_bps) {
        ok = false;
        detail += tag + "attacker peaked at " + fmt(peak / link_bps) + " of link; ";
      }
    }
  }
  o.passed = ok;
  o.detail = ok ? "every victim at or below " + fmt(max_ratio) + " of baseline" : detail;
}

void multi_victim(const CheckParams& p, const std::vector<RunResult>& runs, CheckOutcome& o) {
  const auto victims = ids_param(p, "victims", "victim");
  const SimTime b0 = at_s(p.number("baseline_from_s"));
  const SimTime b1 = at_s(p.number("baseline_to_s"));
  const SimTime after = at_s(p.number("after_s"));
  const double max_ratio = p.number_or("max_ratio", 0.10);
  bool ok = victims.size() >= 2;
  std::string detail;
  for (const auto& r : runs) {
    for (ContainerId v : victims) {
      const double g0 = r.mean_goodput(v, b0, b1);
      const double ratio = g0 > 0 ? r.mean_goodput(v, after, r.config.duration) / g0 : 1.0;
      o.metrics["victim" + std::to_string(v) + "_ratio"] = ratio;
      if (!(ratio <= max_ratio)) {
        ok = false;
        detail += "victim " + std::to_string(v) + " kept " + fmt(ratio) + "; ";
      }
    }
    std::map<std::int64_t, std::map<ContainerId, double>> by_t;
    for (const auto& s : r.telemetry) {
      if (s.t > after) by_t[s.t.ticks][s.container] = s.goodput_bps;
    }
    std::size_t violations = 0;
    for (const auto& [t, g] : by_t) {
      for (std::size_t i = 1; i < victims.size(); ++i) {
        if (!(g.at(victims[i - 1]) > g.at(victims[i]))) ++violations;
      }
    }
    o.metrics["ordering_violations"] = static_cast<double>(violations);
    if (violations > 0) {
      ok = false;
      detail += std::to_string(violations) + " post-ramp intervals break the victim ordering; ";
    }
  }
  o.passed = ok;
  o.detail = ok ? "all victims below " + fmt(max_ratio) + " of baseline, ordering preserved"
                : detail;
}

void cache_depletion(const CheckParams& p, const std::vector<RunResult>& runs, CheckOutcome& o) {
  const ContainerId victim = cid(p.number("victim"));
  const SimTime b0 = at_s(p.number("baseline_from_s"));
  const SimTime b1 = at_s(p.number("baseline_to_s"));
  const auto& phases = p.list("phases_s");  // phase boundaries, ascending
  const double min_rise = p.number_or("min_rise", 1.0);
  const double lat_factor = p.number_or("latency_factor", 100.0);
  const SimTime end_window = at_s(p.number_or("latency_window_s", 0.5));
  bool ok = phases.size() >= 2;
  std::string detail;
  for (const auto& r : runs) {
    const double miss0 = mean_of(r, victim, b0, b1, &TelemetrySnapshot::mtt_miss_rate);
    const double lat0 = mean_of(r, victim, b0, b1, &TelemetrySnapshot::avg_latency_us);
    o.metrics["baseline_miss_rate"] = miss0;
    o.metrics["baseline_latency_us"] = lat0;
    double prev = -1.0;
    double last = 0.0;
    for (std::size_t i = 1; i < phases.size(); ++i) {
      const double m = mean_of(r, victim, at_s(phases[i - 1]), at_s(phases[i]),
                               &TelemetrySnapshot::mtt_miss_rate);
      o.metrics["phase" + std::to_string(i) + "_miss_rate"] = m;
      if (m < prev) {
        ok = false;
        detail += "miss rate fell from " + fmt(prev) + " to " + fmt(m) + " in phase " +
                  std::to_string(i) + "; ";
      }
      prev = m;
      last = m;
    }
    const double rise = miss0 > 0 ? last / miss0 - 1.0 : 0.0;
    o.metrics["miss_rate_rise"] = rise;
    if (rise < min_rise) {
      ok = false;
      detail += "miss rate rose only " + fmt(rise * 100) + "%; ";
    }
    const SimTime attack_end = at_s(phases.back());
    const double lat1 = mean_of(r, victim, attack_end - end_window, attack_end,
                                &TelemetrySnapshot::avg_latency_us);
    const double factor = lat0 > 0 ? lat1 / lat0 : 0.0;
    o.metrics["latency_factor"] = factor;
    if (factor < lat_factor) {
      ok = false;
      detail += "latency grew " + fmt(factor) + "x; ";
    }
  }
  o.passed = ok;
  o.detail = ok ? "miss rate rise " + fmt(o.metrics["miss_rate_rise"] * 100) +
                      "%, monotone over phases; latency x" + fmt(o.metrics["latency_factor"])
                : detail;
}

void pause_structure(const CheckParams& p, const std::vector<RunResult>& runs, CheckOutcome& o) {
  const ContainerId attacker = cid(p.number("attacker"));
  std::vector<double> strict = {4, 8, 16, 24};
  if (p.lists.count("strict_qps")) strict = p.list("strict_qps");

  // (verb, mode) -> qps -> pause frames
  std::map<std::string, std::map<std::uint32_t, std::uint64_t>> series;
  for (const auto& r : runs) {
    const ContainerSpec* c = r.config.find(attacker);
    if (!c) continue;
    const std::string key = std::string(to_string(c->workload.mode)) + "_" +
                            std::string(to_string(primary_verb(c->workload)));
    series[key][qps_of_run(r, attacker)] = r.total_pause_frames;
    o.metrics[key + "@" + std::to_string(qps_of_run(r, attacker))] =
        static_cast<double>(r.total_pause_frames);
  }
  bool ok = true;
  std::string detail;
  auto need = [&](const std::string& key) -> const std::map<std::uint32_t, std::uint64_t>* {
    auto it = series.find(key);
    if (it == series.end()) {
      ok = false;
      detail += "missing series " + key + "; ";
      return nullptr;
    }
    return &it->second;
  };
  if (auto* s = need("RC_READ")) {
    for (const auto& [q, n] : *s) {
      if (n != 0) {
        ok = false;
        detail += "RC READ paused " + std::to_string(n) + " times at " + std::to_string(q) +
                  " QPs; ";
      }
    }
  }
  if (auto* s = need("RC_WRITE")) {
    if (!s->count(1) || s->at(1) != 0) {
      ok = false;
      detail += "RC WRITE not pause-free at 1 QP; ";
    }
    for (std::size_t i = 1; i < strict.size(); ++i) {
      const auto a = static_cast<std::uint32_t>(strict[i - 1]);
      const auto b = static_cast<std::uint32_t>(strict[i]);
      if (!s->count(a) || !s->count(b) || !(s->at(b) > s->at(a))) {
        ok = false;
        detail += "RC WRITE not strictly increasing between " + std::to_string(a) + " and " +
                  std::to_string(b) + " QPs; ";
      }
    }
  }
  for (const char* key : {"UC_WRITE", "UC_SEND"}) {
    if (auto* s = need(key)) {
      if (!s->count(1) || s->at(1) == 0) {
        ok = false;
        detail += std::string(key) + " has no PAUSE frames at 1 QP; ";
      }
    }
  }
  for (const auto& [key, s] : series) {
    std::uint64_t prev = 0;
    for (const auto& [q, n] : s) {
      if (n < prev) {
        ok = false;
        detail += key + " decreases at " + std::to_string(q) + " QPs; ";
      }
      prev = n;
    }
  }
  o.passed = ok;
  o.detail = ok ? "PAUSE structure matches (READ silent, RC WRITE onset, UC at 1 QP)" : detail;
}

void amplification(const CheckParams& p, const std::vector<RunResult>& runs, CheckOutcome& o) {
  const double tol = p.number_or("tolerance", 0.01);
  const double parity = p.number_or("parity", 0.10);
  const std::map<VerbKind, double> targets = {
      {VerbKind::kSend, p.number("target_send")},
      {VerbKind::kWrite, p.number("target_write")},
      {VerbKind::kRead, p.number("target_read")},
      {VerbKind::kAtomic, p.number("target_atomic")},
  };
  std::map<std::pair<VerbKind, TransportMode>, double> ar;
  for (const auto& r : runs) {
    for (const auto& e : r.amplification.entries) {
      if (auto v = e.ratio()) ar[{e.verb, e.mode}] = *v;
    }
  }
  bool ok = true;
  std::string detail;
  auto get = [&](VerbKind v, TransportMode m) -> std::optional<double> {
    auto it = ar.find({v, m});
    if (it == ar.end()) return std::nullopt;
    return it->second;
  };
  for (const auto& [verb, target] : targets) {
    auto v = get(verb, TransportMode::kRC);
    if (!v) {
      ok = false;
      detail += "no RC " + std::string(to_string(verb)) + " measurement; ";
      continue;
    }
    o.metrics["RC_" + std::string(to_string(verb))] = *v;
    if (std::abs(*v / target - 1.0) > tol) {
      ok = false;
      detail += "RC " + std::string(to_string(verb)) + " AR " + fmt(*v) + " vs " + fmt(target) +
                "; ";
    }
  }
  auto a = get(VerbKind::kAtomic, TransportMode::kRC);
  auto w = get(VerbKind::kWrite, TransportMode::kRC);
  auto rd = get(VerbKind::kRead, TransportMode::kRC);
  auto s = get(VerbKind::kSend, TransportMode::kRC);
  if (a && w && rd && s && !(*a > *w && *w > *rd && *rd > *s)) {
    ok = false;
    detail += "ordering ATOMIC > WRITE > READ > SEND broken; ";
  }
  for (VerbKind verb : {VerbKind::kWrite, VerbKind::kSend}) {
    auto rc = get(verb, TransportMode::kRC);
    auto uc = get(verb, TransportMode::kUC);
    if (!rc || !uc) {
      ok = false;
      detail += "missing RC/UC pair for " + std::string(to_string(verb)) + "; ";
      continue;
    }
    o.metrics["UC_" + std::string(to_string(verb))] = *uc;
    if (std::abs(*uc / *rc - 1.0) > parity) {
      ok = false;
      detail += std::string(to_string(verb)) + " RC/UC parity off; ";
    }
  }
  o.passed = ok;
  o.detail = ok ? "AR within " + fmt(tol * 100) + "% of targets, ordering and parity hold" : detail;
}

void qos_cap(const CheckParams& p, const std::vector<RunResult>& runs, CheckOutcome& o) {
  const ContainerId capped = cid(p.number("capped"));
  const auto others = ids_param(p, "others", "other");
  const double cap_bps = p.number("cap_gbps") * 1e9;
  const SimTime apply = at_s(p.number("apply_at_s"));
  const double tol = p.number_or("tolerance", 0.05);
  bool ok = !others.empty();
  std::string detail;
  for (const auto& r : runs) {
    const SimTime period = r.config.telemetry_period;
    double worst = 0.0;
    for (const auto& s : r.series(capped)) {
      if (s.t >= apply + period) worst = std::max(worst, s.goodput_bps);
    }
    o.metrics["capped_peak_gbps_after"] = worst / 1e9;
    if (worst > cap_bps * (1.0 + tol)) {
      ok = false;
      detail += "capped container reached " + fmt(worst / 1e9) + " Gbps; ";
    }
    double before = 0.0;
    double after = 0.0;
    for (ContainerId id : others) {
      before += r.mean_goodput(id, SimTime{}, apply);
      after += r.mean_goodput(id, apply + period, r.config.duration);
    }
    o.metrics["others_before_gbps"] = before / 1e9;
    o.metrics["others_after_gbps"] = after / 1e9;
    if (!(after > before)) {
      ok = false;
      detail += "others did not gain (" + fmt(before / 1e9) + " -> " + fmt(after / 1e9) + "); ";
    }
  }
  o.passed = ok;
  o.detail = ok ? "cap holds from the first full interval; others " +
                      fmt(o.metrics["others_before_gbps"]) + " -> " +
                      fmt(o.metrics["others_after_gbps"]) + " Gbps"
                : detail;
}

void htverbs_mitigation(const CheckParams& p, const std::vector<RunResult>& runs,
                        CheckOutcome& o) {
  const ContainerId attacker = cid(p.number("attacker"));
  const auto victims = ids_param(p, "victims", "victim");
  const SimTime ramp_end = at_s(p.number("ramp_end_s"));
  const SimTime stop = at_s(p.number("attack_stop_s"));
  const SimTime b0 = at_s(p.number("baseline_from_s"));
  const SimTime b1 = at_s(p.number("baseline_to_s"));
  const double flag_ticks = p.number_or("flag_within_ticks", 3);
  const double recover_ticks = p.number_or("recover_within_ticks", 10);
  const double recover_ratio = p.number_or("recover_ratio", 0.8);
  const double release_ticks = p.number_or("release_within_ticks", 10);
  bool ok = !victims.empty();
  std::string detail;
  for (const auto& r : runs) {
    const std::int64_t period = r.config.telemetry_period.ticks;
    std::optional<SimTime> first_action;
    std::optional<SimTime> last_release;
    std::set<std::optional<QpId>> restricted;
    for (const auto& a : r.decisions) {
      if (a.container != attacker) continue;
      if (a.kind == ActionKind::kRelease) {
        restricted.erase(a.qp);
        last_release = a.t;
      } else {
        if (!first_action) first_action = a.t;
        restricted.insert(a.qp);
      }
    }
    if (!first_action) {
      o.passed = false;
      o.detail = "attacker never flagged";
      return;
    }
    const double flag_delay = static_cast<double>((*first_action - ramp_end).ticks) / period;
    o.metrics["flag_ticks_after_ramp"] = flag_delay;
    if (flag_delay > flag_ticks) {
      ok = false;
      detail += "flagged " + fmt(flag_delay) + " ticks after ramp end; ";
    }
    for (ContainerId v : victims) {
      const double g0 = r.mean_goodput(v, b0, b1);
      std::optional<SimTime> recovered;
      for (const auto& s : r.series(v)) {
        if (s.t > *first_action && s.goodput_bps >= recover_ratio * g0) {
          recovered = s.t;
          break;
        }
      }
      const double ticks =
          recovered ? static_cast<double>((*recovered - *first_action).ticks) / period : 1e9;
      o.metrics["victim" + std::to_string(v) + "_recovery_ticks"] = ticks;
      o.metrics["victim" + std::to_string(v) + "_mitigated_ratio"] =
          g0 > 0 ? r.mean_goodput(v, *first_action + SimTime{recover_ticks * period > 0
                                                               ? static_cast<std::int64_t>(
                                                                     recover_ticks * period)
                                                               : 0},
                                  stop) /
                       g0
                 : 0.0;
      if (ticks > recover_ticks) {
        ok = false;
        detail += "victim " + std::to_string(v) + " not recovered within " + fmt(recover_ticks) +
                  " ticks; ";
      }
    }
    if (!restricted.empty()) {
      ok = false;
      detail += std::to_string(restricted.size()) + " attacker restrictions never released; ";
    } else {
      const double rel = last_release
                             ? static_cast<double>((*last_release - stop).ticks) / period
                             : 1e9;
      o.metrics["release_ticks_after_stop"] = rel;
      if (rel > release_ticks) {
        ok = false;
        detail += "released " + fmt(rel) + " ticks after the attack stopped; ";
      }
    }
  }
  o.passed = ok;
  o.detail = ok ? "flagged, victims recovered, throttles released" : detail;
}

void qos_insufficiency(const CheckParams& p, const std::vector<RunResult>& runs,
                       CheckOutcome& o) {
  goodput_drop(p, runs, o);
}

void no_false_positive(const CheckParams& p, const std::vector<RunResult>& runs,
                       CheckOutcome& o) {
  const auto ids = ids_param(p, "containers", "container");
  bool ok = true;
  std::string detail;
  for (const auto& r : runs) {
    for (const auto& [id, flagged] : r.ever_flagged) {
      if (!ids.empty() && std::find(ids.begin(), ids.end(), id) == ids.end()) continue;
      if (flagged) {
        ok = false;
        detail += (r.label.empty() ? "" : r.label + ": ") + "container " + std::to_string(id) +
                  " flagged; ";
      }
    }
    std::size_t actions = 0;
    for (const auto& a : r.decisions) {
      if (ids.empty() || std::find(ids.begin(), ids.end(), a.container) != ids.end()) ++actions;
    }
    o.metrics[(r.label.empty() ? std::string("run") : r.label) + "_actions"] =
        static_cast<double>(actions);
    if (actions > 0) ok = false;
  }
  o.passed = ok;
  o.detail = ok ? "no container flagged in any run" : detail;
}

const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> r = {
      {"fair_share_curve", fair_share_curve},
      {"goodput_drop", goodput_drop},
      {"multi_victim", multi_victim},
      {"cache_depletion", cache_depletion},
      {"pause_structure", pause_structure},
      {"amplification", amplification},
      {"qos_cap", qos_cap},
      {"qos_insufficiency", qos_insufficiency},
      {"htverbs_mitigation", htverbs_mitigation},
      {"no_false_positive", no_false_positive},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, f] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

bool is_known_check(std::string_view name) {
  return registry().count(std::string(name)) != 0;
}

CheckOutcome evaluate_check(const AssertionSpec& assertion, const std::vector<RunResult>& runs) {
  CheckOutcome o;
  o.check = assertion.check;
  auto it = registry().find(assertion.check);
  if (it == registry().end()) {
    o.detail = "unknown check";
    return o;
  }
  if (runs.empty()) {
    o.detail = "no runs";
    return o;
  }
  try {
    it->second(assertion.params, runs, o);
  } catch (const std::out_of_range& e) {
    o.passed = false;
    o.detail = e.what();
  }
  return o;
}

}  // namespace rnicsim
