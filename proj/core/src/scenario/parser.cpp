#include "rnicsim/scenario/parser.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "rnicsim/telemetry/csv_export.hpp"

namespace rnicsim {

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  std::string at(const YAML::Node& n) const {
    const YAML::Mark m = n.Mark();
    if (m.is_null()) return source_;
    return source_ + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1);
  }

  void error(const YAML::Node& n, const std::string& msg) { errors_.push_back(at(n) + ": " + msg); }
  void error(const std::string& msg) { errors_.push_back(source_ + ": " + msg); }

  // Flags keys of `map` outside `allowed`.
  bool expect_map(const YAML::Node& map, const std::string& ctx,
                  std::initializer_list<const char*> allowed) {
    if (!map.IsMap()) {
      error(map, ctx + " must be a mapping");
      return false;
    }
    std::set<std::string> ok;
    for (const char* a : allowed) ok.insert(a);
    for (const auto& kv : map) {
      const std::string key = kv.first.as<std::string>();
      if (!ok.count(key)) error(kv.first, ctx + ": unknown key '" + key + "'");
    }
    return true;
  }

  template <typename T>
  bool read(const YAML::Node& map, const char* key, T& out, const std::string& ctx) {
    const YAML::Node n = map[key];
    if (!n) return false;
    try {
      out = n.as<T>();
      return true;
    } catch (const YAML::Exception&) {
      error(n, ctx + "." + key + ": expected " + type_name<T>());
      return false;
    }
  }

  bool read_nonneg_int(const YAML::Node& map, const char* key, std::uint64_t& out,
                       const std::string& ctx) {
    double v = 0;
    if (!read(map, key, v, ctx)) return false;
    if (v < 0 || v != std::floor(v) || v > 9.0e15) {
      error(map[key], ctx + "." + key + ": expected a non-negative integer");
      return false;
    }
    out = static_cast<std::uint64_t>(v);
    return true;
  }

  template <typename U>
  bool read_uint(const YAML::Node& map, const char* key, U& out, const std::string& ctx) {
    std::uint64_t v = 0;
    if (!read_nonneg_int(map, key, v, ctx)) return false;
    if (v > std::numeric_limits<U>::max()) {
      error(map[key], ctx + "." + key + ": value too large");
      return false;
    }
    out = static_cast<U>(v);
    return true;
  }

  bool read_seconds(const YAML::Node& map, const char* key, SimTime& out, const std::string& ctx,
                    double scale = 1.0) {
    double v = 0;
    if (!read(map, key, v, ctx)) return false;
    if (!std::isfinite(v)) {
      error(map[key], ctx + "." + key + ": must be finite");
      return false;
    }
    out = SimTime::from_seconds(v * scale);
    return true;
  }

  template <typename E, typename Parse>
  bool read_enum(const YAML::Node& map, const char* key, E& out, const std::string& ctx,
                 Parse parse, const char* choices) {
    std::string s;
    if (!read(map, key, s, ctx)) return false;
    auto v = parse(s);
    if (!v) {
      error(map[key], ctx + "." + key + ": '" + s + "' is not one of " + choices);
      return false;
    }
    out = *v;
    return true;
  }

  std::vector<std::string>& errors() { return errors_; }

 private:
  template <typename T>
  static const char* type_name() {
    if constexpr (std::is_same_v<T, std::string>) return "a string";
    if constexpr (std::is_same_v<T, bool>) return "a boolean";
    return "a number";
  }

  std::string source_;
  std::vector<std::string> errors_;
};

const char* kVerbChoices = "SEND, RECV, WRITE, READ, ATOMIC";
const char* kModeChoices = "RC, UC";

void read_rnic(Reader& r, const YAML::Node& n, RnicConfig& c) {
  if (!r.expect_map(n, "rnic",
                    {"link_gbps", "rx_gbps", "max_qps", "max_outstanding_wqes",
                     "max_message_bytes", "mtt_entries", "icm_entries", "wqe_entries",
                     "mtt_miss_penalty_us", "icm_miss_penalty_us", "wqe_miss_penalty_us",
                     "verb_processing_us", "atomic_cost_multiplier", "rr_slot_us",
                     "rc_inflight_cap", "rc_ack_delay_us", "rx_verbs_per_us", "base_latency_us",
                     "page_bytes", "pfc", "wire_overhead"})) {
    return;
  }
  const std::string ctx = "rnic";
  r.read(n, "link_gbps", c.link_gbps, ctx);
  r.read(n, "rx_gbps", c.rx_gbps, ctx);
  r.read_uint(n, "max_qps", c.max_qps, ctx);
  r.read_uint(n, "max_outstanding_wqes", c.max_outstanding_wqes, ctx);
  r.read_uint(n, "max_message_bytes", c.max_message_bytes, ctx);
  r.read_uint(n, "mtt_entries", c.mtt_entries, ctx);
  r.read_uint(n, "icm_entries", c.icm_entries, ctx);
  r.read_uint(n, "wqe_entries", c.wqe_entries, ctx);
  r.read(n, "mtt_miss_penalty_us", c.mtt_miss_penalty_us, ctx);
  r.read(n, "icm_miss_penalty_us", c.icm_miss_penalty_us, ctx);
  r.read(n, "wqe_miss_penalty_us", c.wqe_miss_penalty_us, ctx);
  r.read(n, "verb_processing_us", c.verb_processing_us, ctx);
  r.read(n, "atomic_cost_multiplier", c.atomic_cost_multiplier, ctx);
  r.read(n, "rr_slot_us", c.rr_slot_us, ctx);
  r.read_uint(n, "rc_inflight_cap", c.rc_inflight_cap, ctx);
  r.read(n, "rc_ack_delay_us", c.rc_ack_delay_us, ctx);
  r.read(n, "rx_verbs_per_us", c.rx_verbs_per_us, ctx);
  r.read(n, "base_latency_us", c.base_latency_us, ctx);
  r.read_uint(n, "page_bytes", c.page_bytes, ctx);
  if (const YAML::Node p = n["pfc"]) {
    if (r.expect_map(p, "rnic.pfc", {"capacity_bytes", "xoff_bytes", "xon_bytes"})) {
      r.read(p, "capacity_bytes", c.pfc.capacity_bytes, "rnic.pfc");
      r.read(p, "xoff_bytes", c.pfc.xoff_bytes, "rnic.pfc");
      r.read(p, "xon_bytes", c.pfc.xon_bytes, "rnic.pfc");
    }
  }
  if (const YAML::Node w = n["wire_overhead"]) {
    if (r.expect_map(w, "rnic.wire_overhead", {"SEND", "RECV", "WRITE", "READ", "ATOMIC"})) {
      for (const auto& kv : w) {
        auto verb = parse_verb(kv.first.as<std::string>());
        if (!verb) continue;
        const std::string ctx2 = "rnic.wire_overhead." + kv.first.as<std::string>();
        if (!r.expect_map(kv.second, ctx2, {"RC", "UC"})) continue;
        r.read(kv.second, "RC", c.wire_overhead.at(*verb, TransportMode::kRC), ctx2);
        r.read(kv.second, "UC", c.wire_overhead.at(*verb, TransportMode::kUC), ctx2);
      }
    }
  }
}

void read_workload(Reader& r, const YAML::Node& n, WorkloadSpec& w, const std::string& ctx) {
  if (!r.expect_map(n, ctx,
                    {"kind", "mode", "verb", "message_bytes", "qps", "qp_ramp", "start_s",
                     "duration_s", "batch", "page_stride", "working_set_pages"})) {
    return;
  }
  if (!n["kind"]) r.error(n, ctx + ": 'kind' is required");
  r.read_enum(n, "kind", w.kind, ctx, parse_workload_kind,
              "write_bw, read_lat, queue_flood, cache_depletion, verbs_flood, "
              "verbs_amplification, idle");
  r.read_enum(n, "mode", w.mode, ctx, parse_transport_mode, kModeChoices);
  r.read_enum(n, "verb", w.verb, ctx, parse_verb, kVerbChoices);
  r.read_uint(n, "message_bytes", w.message_bytes, ctx);
  r.read_uint(n, "qps", w.qps, ctx);
  r.read_seconds(n, "start_s", w.start, ctx);
  SimTime d{};
  if (r.read_seconds(n, "duration_s", d, ctx)) w.duration = d;
  r.read_uint(n, "batch", w.batch, ctx);
  r.read_uint(n, "page_stride", w.page_stride, ctx);
  r.read_uint(n, "working_set_pages", w.working_set_pages, ctx);
  if (const YAML::Node ramp = n["qp_ramp"]) {
    if (!ramp.IsSequence()) {
      r.error(ramp, ctx + ".qp_ramp must be a list");
    } else {
      for (std::size_t i = 0; i < ramp.size(); ++i) {
        const std::string c2 = ctx + ".qp_ramp[" + std::to_string(i) + "]";
        if (!r.expect_map(ramp[i], c2, {"at_s", "qps"})) continue;
        RampStep step;
        if (!ramp[i]["at_s"] || !ramp[i]["qps"]) r.error(ramp[i], c2 + ": needs at_s and qps");
        r.read_seconds(ramp[i], "at_s", step.at, c2);
        r.read_uint(ramp[i], "qps", step.qps, c2);
        w.qp_ramp.push_back(step);
      }
    }
  }
}

void read_containers(Reader& r, const YAML::Node& n, std::vector<ContainerSpec>& out) {
  if (!n.IsSequence()) {
    r.error(n, "containers must be a list");
    return;
  }
  for (std::size_t i = 0; i < n.size(); ++i) {
    const YAML::Node c = n[i];
    const std::string ctx = "containers[" + std::to_string(i) + "]";
    if (!r.expect_map(c, ctx, {"id", "name", "role", "vf", "workload"})) continue;
    ContainerSpec spec;
    if (!c["id"]) r.error(c, ctx + ": 'id' is required");
    r.read_uint(c, "id", spec.id, ctx);
    spec.vf = spec.id;
    r.read(c, "name", spec.name, ctx);
    if (spec.name.empty()) spec.name = "c" + std::to_string(spec.id);
    r.read_enum(c, "role", spec.role, ctx, parse_role, "victim, attacker, decoy");
    r.read_uint(c, "vf", spec.vf, ctx);
    if (const YAML::Node w = c["workload"]) read_workload(r, w, spec.workload, ctx + ".workload");
    out.push_back(spec);
  }
}

std::optional<Enforcement> parse_enforcement(std::string_view s) {
  if (s == "pace") return Enforcement::kPace;
  if (s == "deprioritize") return Enforcement::kDeprioritize;
  return std::nullopt;
}

void read_defense(Reader& r, const YAML::Node& n, DefenseConfig& d) {
  if (!r.expect_map(n, "defense", {"mode", "qos", "htverbs"})) return;
  r.read_enum(n, "mode", d.mode, "defense", parse_defense_mode, "none, qos, htverbs, both");
  if (const YAML::Node q = n["qos"]) {
    if (r.expect_map(q, "defense.qos", {"apply_at_s", "policies"})) {
      QosPolicy p;
      r.read_seconds(q, "apply_at_s", p.apply_at, "defense.qos");
      if (const YAML::Node ps = q["policies"]) {
        if (!ps.IsSequence()) {
          r.error(ps, "defense.qos.policies must be a list");
        } else {
          for (std::size_t i = 0; i < ps.size(); ++i) {
            const std::string ctx = "defense.qos.policies[" + std::to_string(i) + "]";
            if (!r.expect_map(ps[i], ctx,
                              {"container", "ets_weight", "max_rate_gbps", "min_rate_gbps",
                               "max_rate_bps", "min_rate_bps"})) {
              continue;
            }
            QosEntry e;
            if (!ps[i]["container"]) r.error(ps[i], ctx + ": 'container' is required");
            r.read_uint(ps[i], "container", e.container, ctx);
            r.read(ps[i], "ets_weight", e.ets_weight, ctx);
            double g = 0;
            if (r.read(ps[i], "max_rate_gbps", g, ctx)) e.max_rate_bps = g * 1e9;
            if (r.read(ps[i], "min_rate_gbps", g, ctx)) e.min_rate_bps = g * 1e9;
            if (r.read(ps[i], "max_rate_bps", g, ctx)) e.max_rate_bps = g;
            if (r.read(ps[i], "min_rate_bps", g, ctx)) e.min_rate_bps = g;
            p.entries.push_back(e);
          }
        }
      }
      d.qos = p;
    }
  }
  if (const YAML::Node h = n["htverbs"]) {
    const std::string ctx = "defense.htverbs";
    if (r.expect_map(h, ctx,
                     {"window_len", "persistence_intervals", "hot_percentile", "cold_percentile",
                      "efficiency_floor", "hot_restrict_fraction", "enforcement"})) {
      r.read_uint(h, "window_len", d.htverbs.window_len, ctx);
      r.read_uint(h, "persistence_intervals", d.htverbs.persistence_intervals, ctx);
      r.read(h, "hot_percentile", d.htverbs.hot_percentile, ctx);
      r.read(h, "cold_percentile", d.htverbs.cold_percentile, ctx);
      r.read(h, "efficiency_floor", d.htverbs.efficiency_floor, ctx);
      r.read(h, "hot_restrict_fraction", d.htverbs.hot_restrict_fraction, ctx);
      r.read_enum(h, "enforcement", d.htverbs.enforcement, ctx, parse_enforcement,
                  "pace, deprioritize");
    }
  }
}

void read_sweep(Reader& r, const YAML::Node& n, std::optional<SweepSpec>& out) {
  if (!r.expect_map(n, "sweep", {"container", "variants"})) return;
  SweepSpec s;
  if (!n["container"]) r.error(n, "sweep: 'container' is required");
  r.read_uint(n, "container", s.container, "sweep");
  const YAML::Node vs = n["variants"];
  if (!vs || !vs.IsSequence()) {
    r.error(vs ? vs : n, "sweep.variants must be a list");
  } else {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const std::string ctx = "sweep.variants[" + std::to_string(i) + "]";
      if (!r.expect_map(vs[i], ctx, {"label", "kind", "verb", "mode", "qps", "message_bytes"})) {
        continue;
      }
      SweepVariant v;
      if (!vs[i]["label"]) r.error(vs[i], ctx + ": 'label' is required");
      r.read(vs[i], "label", v.label, ctx);
      WorkloadKind k{};
      if (r.read_enum(vs[i], "kind", k, ctx, parse_workload_kind, "a workload kind")) v.kind = k;
      VerbKind verb{};
      if (r.read_enum(vs[i], "verb", verb, ctx, parse_verb, kVerbChoices)) v.verb = verb;
      TransportMode m{};
      if (r.read_enum(vs[i], "mode", m, ctx, parse_transport_mode, kModeChoices)) v.mode = m;
      std::uint32_t q = 0;
      if (r.read_uint(vs[i], "qps", q, ctx)) v.qps = q;
      std::uint64_t mb = 0;
      if (r.read_uint(vs[i], "message_bytes", mb, ctx)) v.message_bytes = mb;
      s.variants.push_back(v);
    }
  }
  out = s;
}

void read_assertions(Reader& r, const YAML::Node& n, std::vector<AssertionSpec>& out) {
  if (!n.IsSequence()) {
    r.error(n, "assertions must be a list");
    return;
  }
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::string ctx = "assertions[" + std::to_string(i) + "]";
    if (!r.expect_map(n[i], ctx, {"check", "params"})) continue;
    AssertionSpec a;
    if (!n[i]["check"]) r.error(n[i], ctx + ": 'check' is required");
    r.read(n[i], "check", a.check, ctx);
    if (const YAML::Node p = n[i]["params"]) {
      if (!p.IsMap()) {
        r.error(p, ctx + ".params must be a mapping");
      } else {
        for (const auto& kv : p) {
          const std::string key = kv.first.as<std::string>();
          const YAML::Node v = kv.second;
          if (v.IsSequence()) {
            std::vector<double> xs;
            for (const auto& x : v) {
              try {
                xs.push_back(x.as<double>());
              } catch (const YAML::Exception&) {
                r.error(x, ctx + ".params." + key + ": list entries must be numbers");
              }
            }
            a.params.lists[key] = xs;
          } else if (v.IsScalar()) {
            double d = 0;
            if (YAML::convert<double>::decode(v, d)) {
              a.params.numbers[key] = d;
            } else {
              a.params.strings[key] = v.as<std::string>();
            }
          } else {
            r.error(v, ctx + ".params." + key + ": expected a scalar or a list");
          }
        }
      }
    }
    out.push_back(a);
  }
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError({source + ":" + std::to_string(e.mark.line + 1) + ":" +
                       std::to_string(e.mark.column + 1) + ": syntax error: " + e.msg});
  }
  Reader r(source);
  ScenarioConfig c;
  if (!root || !root.IsMap()) {
    throw ConfigError({source + ": top level must be a mapping"});
  }
  r.expect_map(root, "scenario",
               {"version", "name", "description", "seed", "duration_s", "telemetry_period_ms",
                "rnic", "containers", "defense", "sweep", "assertions"});
  if (!root["version"]) r.error(root, "'version' is required");
  if (!root["name"]) r.error(root, "'name' is required");
  if (!root["containers"]) r.error(root, "'containers' is required");
  r.read(root, "version", c.version, "scenario");
  r.read(root, "name", c.name, "scenario");
  r.read(root, "description", c.description, "scenario");
  r.read_nonneg_int(root, "seed", c.seed, "scenario");
  r.read_seconds(root, "duration_s", c.duration, "scenario");
  r.read_seconds(root, "telemetry_period_ms", c.telemetry_period, "scenario", 1e-3);
  if (const YAML::Node n = root["rnic"]) read_rnic(r, n, c.rnic);
  if (const YAML::Node n = root["containers"]) read_containers(r, n, c.containers);
  if (const YAML::Node n = root["defense"]) read_defense(r, n, c.defense);
  if (const YAML::Node n = root["sweep"]) read_sweep(r, n, c.sweep);
  if (const YAML::Node n = root["assertions"]) read_assertions(r, n, c.assertions);

  std::vector<std::string> errors = std::move(r.errors());
  for (auto& m : validate(c)) errors.push_back(source + ": " + m);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return c;
}

ScenarioConfig parse_scenario_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError({path.string() + ": cannot open file"});
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_scenario(ss.str(), path.string());
}

namespace {

std::string num(double v) { return format_number(v); }
std::string secs(SimTime t) { return format_number(t.seconds()); }

void emit_workload(YAML::Emitter& out, const WorkloadSpec& w) {
  out << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << std::string(to_string(w.kind));
  out << YAML::Key << "mode" << YAML::Value << std::string(to_string(w.mode));
  out << YAML::Key << "verb" << YAML::Value << std::string(to_string(w.verb));
  out << YAML::Key << "message_bytes" << YAML::Value << w.message_bytes;
  out << YAML::Key << "qps" << YAML::Value << w.qps;
  out << YAML::Key << "qp_ramp" << YAML::Value << YAML::BeginSeq;
  for (const auto& s : w.qp_ramp) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "at_s" << YAML::Value << secs(s.at)
        << YAML::Key << "qps" << YAML::Value << s.qps << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "start_s" << YAML::Value << secs(w.start);
  if (w.duration) out << YAML::Key << "duration_s" << YAML::Value << secs(*w.duration);
  out << YAML::Key << "batch" << YAML::Value << w.batch;
  out << YAML::Key << "page_stride" << YAML::Value << w.page_stride;
  out << YAML::Key << "working_set_pages" << YAML::Value << w.working_set_pages;
  out << YAML::EndMap;
}

void emit_rnic(YAML::Emitter& out, const RnicConfig& c) {
  out << YAML::BeginMap;
  auto kv = [&](const char* k, const std::string& v) { out << YAML::Key << k << YAML::Value << v; };
  kv("link_gbps", num(c.link_gbps));
  kv("rx_gbps", num(c.rx_gbps));
  out << YAML::Key << "max_qps" << YAML::Value << c.max_qps;
  out << YAML::Key << "max_outstanding_wqes" << YAML::Value << c.max_outstanding_wqes;
  out << YAML::Key << "max_message_bytes" << YAML::Value << c.max_message_bytes;
  out << YAML::Key << "mtt_entries" << YAML::Value << c.mtt_entries;
  out << YAML::Key << "icm_entries" << YAML::Value << c.icm_entries;
  out << YAML::Key << "wqe_entries" << YAML::Value << c.wqe_entries;
  kv("mtt_miss_penalty_us", num(c.mtt_miss_penalty_us));
  kv("icm_miss_penalty_us", num(c.icm_miss_penalty_us));
  kv("wqe_miss_penalty_us", num(c.wqe_miss_penalty_us));
  kv("verb_processing_us", num(c.verb_processing_us));
  kv("atomic_cost_multiplier", num(c.atomic_cost_multiplier));
  kv("rr_slot_us", num(c.rr_slot_us));
  out << YAML::Key << "rc_inflight_cap" << YAML::Value << c.rc_inflight_cap;
  kv("rc_ack_delay_us", num(c.rc_ack_delay_us));
  kv("rx_verbs_per_us", num(c.rx_verbs_per_us));
  kv("base_latency_us", num(c.base_latency_us));
  out << YAML::Key << "page_bytes" << YAML::Value << c.page_bytes;
  out << YAML::Key << "pfc" << YAML::Value << YAML::BeginMap;
  kv("capacity_bytes", num(c.pfc.capacity_bytes));
  kv("xoff_bytes", num(c.pfc.xoff_bytes));
  kv("xon_bytes", num(c.pfc.xon_bytes));
  out << YAML::EndMap;
  out << YAML::Key << "wire_overhead" << YAML::Value << YAML::BeginMap;
  for (VerbKind v : kAllVerbs) {
    out << YAML::Key << std::string(to_string(v)) << YAML::Value << YAML::Flow << YAML::BeginMap;
    kv("RC", num(c.wire_overhead.at(v, TransportMode::kRC)));
    kv("UC", num(c.wire_overhead.at(v, TransportMode::kUC)));
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  out << YAML::EndMap;
}

}  // namespace

std::string emit_scenario(const ScenarioConfig& c) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "version" << YAML::Value << c.version;
  out << YAML::Key << "name" << YAML::Value << c.name;
  if (!c.description.empty()) {
    out << YAML::Key << "description" << YAML::Value << YAML::DoubleQuoted << c.description;
  }
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "duration_s" << YAML::Value << secs(c.duration);
  out << YAML::Key << "telemetry_period_ms" << YAML::Value
      << num(c.telemetry_period.seconds() * 1e3);
  out << YAML::Key << "rnic" << YAML::Value;
  emit_rnic(out, c.rnic);

  out << YAML::Key << "containers" << YAML::Value << YAML::BeginSeq;
  for (const auto& ct : c.containers) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << ct.id;
    out << YAML::Key << "name" << YAML::Value << ct.name;
    out << YAML::Key << "role" << YAML::Value << std::string(to_string(ct.role));
    out << YAML::Key << "vf" << YAML::Value << ct.vf;
    out << YAML::Key << "workload" << YAML::Value;
    emit_workload(out, ct.workload);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "defense" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "mode" << YAML::Value << std::string(to_string(c.defense.mode));
  if (c.defense.qos) {
    out << YAML::Key << "qos" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "apply_at_s" << YAML::Value << secs(c.defense.qos->apply_at);
    out << YAML::Key << "policies" << YAML::Value << YAML::BeginSeq;
    for (const auto& e : c.defense.qos->entries) {
      out << YAML::BeginMap;
      out << YAML::Key << "container" << YAML::Value << e.container;
      out << YAML::Key << "ets_weight" << YAML::Value << num(e.ets_weight);
      if (e.max_rate_bps) {
        out << YAML::Key << "max_rate_bps" << YAML::Value << num(*e.max_rate_bps);
      }
      if (e.min_rate_bps) {
        out << YAML::Key << "min_rate_bps" << YAML::Value << num(*e.min_rate_bps);
      }
      out << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
  }
  const HtVerbsParams& h = c.defense.htverbs;
  out << YAML::Key << "htverbs" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "window_len" << YAML::Value << h.window_len;
  out << YAML::Key << "persistence_intervals" << YAML::Value << h.persistence_intervals;
  out << YAML::Key << "hot_percentile" << YAML::Value << num(h.hot_percentile);
  out << YAML::Key << "cold_percentile" << YAML::Value << num(h.cold_percentile);
  out << YAML::Key << "efficiency_floor" << YAML::Value << num(h.efficiency_floor);
  out << YAML::Key << "hot_restrict_fraction" << YAML::Value << num(h.hot_restrict_fraction);
  out << YAML::Key << "enforcement" << YAML::Value
      << (h.enforcement == Enforcement::kPace ? "pace" : "deprioritize");
  out << YAML::EndMap;
  out << YAML::EndMap;

  if (c.sweep) {
    out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "container" << YAML::Value << c.sweep->container;
    out << YAML::Key << "variants" << YAML::Value << YAML::BeginSeq;
    for (const auto& v : c.sweep->variants) {
      out << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "label" << YAML::Value << v.label;
      if (v.kind) out << YAML::Key << "kind" << YAML::Value << std::string(to_string(*v.kind));
      if (v.verb) out << YAML::Key << "verb" << YAML::Value << std::string(to_string(*v.verb));
      if (v.mode) out << YAML::Key << "mode" << YAML::Value << std::string(to_string(*v.mode));
      if (v.qps) out << YAML::Key << "qps" << YAML::Value << *v.qps;
      if (v.message_bytes) out << YAML::Key << "message_bytes" << YAML::Value << *v.message_bytes;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
  }

  if (!c.assertions.empty()) {
    out << YAML::Key << "assertions" << YAML::Value << YAML::BeginSeq;
    for (const auto& a : c.assertions) {
      out << YAML::BeginMap;
      out << YAML::Key << "check" << YAML::Value << a.check;
      out << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
      for (const auto& [k, v] : a.params.numbers) out << YAML::Key << k << YAML::Value << num(v);
      for (const auto& [k, v] : a.params.strings) {
        out << YAML::Key << k << YAML::Value << YAML::DoubleQuoted << v;
      }
      for (const auto& [k, xs] : a.params.lists) {
        out << YAML::Key << k << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (double x : xs) out << num(x);
        out << YAML::EndSeq;
      }
      out << YAML::EndMap << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace rnicsim
