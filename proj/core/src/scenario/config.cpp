#include "rnicsim/scenario/config.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "rnicsim/scenario/checks.hpp"

namespace rnicsim {

std::string_view to_string(DefenseMode m) {
  switch (m) {
    case DefenseMode::kNone: return "none";
    case DefenseMode::kQos: return "qos";
    case DefenseMode::kHtVerbs: return "htverbs";
    case DefenseMode::kBoth: return "both";
  }
  return "?";
}

std::optional<DefenseMode> parse_defense_mode(std::string_view s) {
  for (auto m : {DefenseMode::kNone, DefenseMode::kQos, DefenseMode::kHtVerbs,
                 DefenseMode::kBoth}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

double CheckParams::number(const std::string& key) const {
  auto it = numbers.find(key);
  if (it == numbers.end()) throw std::out_of_range("missing numeric parameter '" + key + "'");
  return it->second;
}

double CheckParams::number_or(const std::string& key, double fallback) const {
  auto it = numbers.find(key);
  return it == numbers.end() ? fallback : it->second;
}

const std::vector<double>& CheckParams::list(const std::string& key) const {
  auto it = lists.find(key);
  if (it == lists.end()) throw std::out_of_range("missing list parameter '" + key + "'");
  return it->second;
}

std::string CheckParams::string_or(const std::string& key, const std::string& fallback) const {
  auto it = strings.find(key);
  return it == strings.end() ? fallback : it->second;
}

const ContainerSpec* ScenarioConfig::find(ContainerId id) const {
  for (const auto& c : containers) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

namespace {
std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) {
    if (!out.empty()) out += '\n';
    out += s;
  }
  return out;
}

bool safe_label(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.';
  });
}

void validate_rnic(const RnicConfig& r, std::vector<std::string>& e) {
  auto range = [&](const char* name, double v, double lo, double hi) {
    if (!(v >= lo && v <= hi)) {
      e.push_back("rnic." + std::string(name) + " = " + std::to_string(v) + " outside [" +
                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  };
  range("link_gbps", r.link_gbps, 0.001, 10000);
  range("rx_gbps", r.rx_gbps, 0.001, 10000);
  range("max_qps", r.max_qps, 1, 1 << 24);
  range("max_outstanding_wqes", r.max_outstanding_wqes, 1, 1 << 20);
  range("max_message_bytes", static_cast<double>(r.max_message_bytes), 1, 1ULL << 31);
  range("mtt_entries", r.mtt_entries, 1, 1 << 26);
  range("icm_entries", r.icm_entries, 1, 1 << 26);
  range("wqe_entries", r.wqe_entries, 1, 1 << 26);
  range("mtt_miss_penalty_us", r.mtt_miss_penalty_us, 0, 1e6);
  range("icm_miss_penalty_us", r.icm_miss_penalty_us, 0, 1e6);
  range("wqe_miss_penalty_us", r.wqe_miss_penalty_us, 0, 1e6);
  range("verb_processing_us", r.verb_processing_us, 1e-6, 1e6);
  range("atomic_cost_multiplier", r.atomic_cost_multiplier, 1, 1000);
  range("rr_slot_us", r.rr_slot_us, 1e-3, 1e6);
  range("rc_inflight_cap", r.rc_inflight_cap, 1, 1 << 24);
  range("rc_ack_delay_us", r.rc_ack_delay_us, 0, 1e9);
  range("rx_verbs_per_us", r.rx_verbs_per_us, 1e-6, 1e6);
  range("base_latency_us", r.base_latency_us, 0, 1e9);
  range("page_bytes", static_cast<double>(r.page_bytes), 1, 1ULL << 30);
  if (!(r.pfc.xon_bytes >= 0 && r.pfc.xon_bytes < r.pfc.xoff_bytes &&
        r.pfc.xoff_bytes <= r.pfc.capacity_bytes)) {
    e.emplace_back("rnic.pfc requires 0 <= xon < xoff <= capacity");
  }
  for (VerbKind v : kAllVerbs) {
    if (v == VerbKind::kRecv) continue;
    for (TransportMode m : {TransportMode::kRC, TransportMode::kUC}) {
      if (!verb_legal(v, m)) continue;
      if (!(r.wire_overhead.at(v, m) > 0.0)) {
        e.push_back("rnic.wire_overhead." + std::string(to_string(v)) + "." +
                    std::string(to_string(m)) + " must be positive");
      }
    }
  }
}
}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> e;
  if (c.version != kScenarioSchemaVersion) {
    e.push_back("version " + std::to_string(c.version) + " is not supported (expected " +
                std::to_string(kScenarioSchemaVersion) + ")");
  }
  if (!safe_label(c.name)) e.emplace_back("name must be non-empty [A-Za-z0-9_.-]");
  if (c.duration.ticks <= 0) e.emplace_back("duration_s must be positive");
  if (c.telemetry_period.ticks <= 0) e.emplace_back("telemetry_period_ms must be positive");
  if (c.telemetry_period > c.duration) e.emplace_back("telemetry period exceeds duration");
  validate_rnic(c.rnic, e);

  if (c.containers.empty()) e.emplace_back("containers: at least one container is required");
  std::set<ContainerId> ids;
  std::set<std::uint32_t> vfs;
  bool decoy = false;
  for (const auto& ct : c.containers) {
    const std::string where = "container " + std::to_string(ct.id);
    if (ct.id == 0) e.push_back(where + ": id must be positive");
    if (!ids.insert(ct.id).second) e.push_back(where + ": duplicate container id");
    if (!vfs.insert(ct.vf).second) {
      e.push_back(where + ": vf " + std::to_string(ct.vf) + " already bound to another container");
    }
    if (ct.role == Role::kDecoy) decoy = true;
    for (auto& m : validate(ct.workload, ct.role, where)) e.push_back(std::move(m));
  }
  for (const auto& ct : c.containers) {
    if (ct.workload.kind == WorkloadKind::kQueueFlood && ct.workload.mode == TransportMode::kRC &&
        !decoy) {
      e.push_back("container " + std::to_string(ct.id) +
                  ": RC queue_flood needs a decoy container to terminate its connections");
    }
  }

  if (c.defense.qos_enabled() && !c.defense.qos) {
    e.emplace_back("defense.qos is required when defense.mode is qos or both");
  }
  if (c.defense.qos) {
    for (auto& m : c.defense.qos->validate()) e.push_back("defense." + m);
    for (const auto& q : c.defense.qos->entries) {
      if (!ids.count(q.container)) {
        e.push_back("defense.qos: unknown container " + std::to_string(q.container));
      }
    }
    if (c.defense.qos->apply_at.ticks < 0) e.emplace_back("defense.qos.apply_at_s must be >= 0");
  }
  for (auto& m : c.defense.htverbs.validate()) e.push_back("defense." + m);

  if (c.sweep) {
    if (!ids.count(c.sweep->container)) {
      e.push_back("sweep.container " + std::to_string(c.sweep->container) + " is not defined");
    }
    if (c.sweep->variants.empty()) e.emplace_back("sweep.variants must not be empty");
    std::set<std::string> labels;
    for (const auto& v : c.sweep->variants) {
      if (!safe_label(v.label)) e.push_back("sweep variant label '" + v.label + "' is not a safe name");
      if (!labels.insert(v.label).second) e.push_back("sweep variant label '" + v.label + "' repeats");
      if (const ContainerSpec* ct = c.find(c.sweep->container)) {
        ScenarioConfig applied = apply_variant(c, v);
        const ContainerSpec* vc = applied.find(ct->id);
        for (auto& m : validate(vc->workload, vc->role, "sweep variant " + v.label)) {
          e.push_back(std::move(m));
        }
      }
    }
  }

  for (const auto& a : c.assertions) {
    if (!is_known_check(a.check)) e.push_back("assertion: unknown check '" + a.check + "'");
  }
  return e;
}

ScenarioConfig apply_variant(const ScenarioConfig& config, const SweepVariant& v) {
  ScenarioConfig out = config;
  if (!config.sweep) return out;
  for (auto& ct : out.containers) {
    if (ct.id != config.sweep->container) continue;
    WorkloadSpec& w = ct.workload;
    if (v.kind) w.kind = *v.kind;
    if (v.verb) w.verb = *v.verb;
    if (v.mode) w.mode = *v.mode;
    if (v.qps) {
      w.qps = *v.qps;
      w.qp_ramp.clear();
    }
    if (v.message_bytes) w.message_bytes = *v.message_bytes;
  }
  return out;
}

}  // namespace rnicsim
