#include "rnicsim/scenario/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <memory>
#include <thread>

#include "json.hpp"
#include "rnicsim/defense/qos.hpp"
#include "rnicsim/engine/simulator.hpp"
#include "rnicsim/rnic/rnic.hpp"
#include "rnicsim/scenario/checks.hpp"
#include "rnicsim/scenario/parser.hpp"
#include "rnicsim/telemetry/csv_export.hpp"
#include "rnicsim/workload/generator.hpp"

namespace rnicsim {

std::vector<TelemetrySnapshot> RunResult::series(ContainerId id) const {
  std::vector<TelemetrySnapshot> out;
  for (const auto& s : telemetry) {
    if (s.container == id) out.push_back(s);
  }
  return out;
}

double RunResult::mean_goodput(ContainerId id, SimTime from, SimTime to) const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& s : telemetry) {
    if (s.container == id && s.t > from && s.t <= to) {
      sum += s.goodput_bps;
      ++n;
    }
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

namespace {

// Schedules one transmission slot per tick while the RNIC has work and
// sleeps otherwise. Stale slots (superseded by an earlier re-arm) are no-ops.
class Pump {
 public:
  Pump(Simulator& sim, Rnic& rnic, SimTime end) : sim_(sim), rnic_(rnic), end_(end) {}

  void wake() { arm(sim_.now()); }

 private:
  void arm(SimTime at) {
    if (last_slot_) at = std::max(at, *last_slot_ + SimTime{1});
    at = std::max(at, sim_.now());
    if (at >= end_) return;
    if (pending_ && *pending_ <= at) return;
    pending_ = at;
    const std::uint64_t gen = ++generation_;
    sim_.schedule(at, EventKind::kTransmissionSlot, [this, gen] { fire(gen); });
  }

  void fire(std::uint64_t gen) {
    if (gen != generation_) return;
    pending_.reset();
    // Runs consecutive busy ticks inline until another event is due; only
    // those events can post work or change controls.
    const std::optional<SimTime> due = sim_.next_event_time();
    const SimTime horizon = due ? std::min(*due, end_) : end_;
    SimTime tick = sim_.now();
    while (true) {
      last_slot_ = tick;
      rnic_.tx_schedule_cycle(tick);
      const SimTime next = rnic_.next_active_tick(tick + SimTime{1});
      if (next >= horizon) {
        arm(next);
        return;
      }
      tick = next;
    }
  }

  Simulator& sim_;
  Rnic& rnic_;
  SimTime end_;
  std::optional<SimTime> pending_;
  std::optional<SimTime> last_slot_;
  std::uint64_t generation_ = 0;
};

}  // namespace

RunResult simulate(const ScenarioConfig& config, const std::string& label) {
  Simulator sim;
  TelemetryCollector collector(config.telemetry_period);
  Rnic rnic(config.rnic, &collector);
  Pump pump(sim, rnic, config.duration);

  for (const auto& c : config.containers) {
    rnic.register_container(c.id);
    collector.add_container(c.id);
  }

  std::vector<std::unique_ptr<WorkloadGenerator>> generators;
  for (const auto& c : config.containers) {
    generators.push_back(std::make_unique<WorkloadGenerator>(
        c.id, c.workload, rnic, sim, RngStream(config.seed, c.id), [&pump] { pump.wake(); }));
    generators.back()->install();
  }

  const QosPolicy* policy = config.defense.qos ? &*config.defense.qos : nullptr;
  if (config.defense.qos_enabled() && policy) {
    sim.schedule(std::max(policy->apply_at, SimTime{}), EventKind::kWorkloadPhase,
                 [&rnic, &pump, policy] {
                   qos_enforce(rnic, *policy);
                   pump.wake();
                 });
  }

  std::optional<HtVerbsController> controller;
  if (config.defense.htverbs_enabled()) controller.emplace(config.defense.htverbs, policy);

  // Telemetry events are scheduled up front so each fires before the slot
  // of the same tick; the defense tick follows it.
  std::vector<TelemetrySnapshot> latest;
  const SimTime period = config.telemetry_period;
  for (SimTime t = period; t <= config.duration; t += period) {
    sim.schedule(t, EventKind::kTelemetryTick, [&, t] {
      latest = collector.snapshot(t, rnic);
      if (!controller) return;
      sim.schedule(t, EventKind::kDefenseTick, [&, t] {
        auto actions = controller->on_tick(t, latest, rnic);
        if (actions.empty()) return;
        apply_actions(rnic, actions);
        pump.wake();
      });
    });
  }

  const EventTrace trace = sim.run(config.duration);

  RunResult r;
  r.label = label;
  r.config = config;
  r.telemetry = collector.history();
  r.amplification = collector.amplification_report();
  r.total_pause_frames = collector.total_pause_frames();
  r.events_processed = trace.count;
  r.trace_digest = trace.digest;
  for (const auto& c : config.containers) {
    r.ever_flagged[c.id] = controller && controller->ever_flagged(c.id);
  }
  for (const auto& g : generators) r.qp_creation_failures[g->owner()] = g->creation_failures();
  if (controller) r.decisions = controller->decision_log();

  r.telemetry_csv = telemetry_csv(r.telemetry);
  r.amplification_csv = amplification_csv(r.amplification);
  r.summary_csv = summary_csv(collector);
  r.decisions_csv = decision_log_csv(r.decisions);
  return r;
}

bool ScenarioReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed; });
}

const RunResult* ScenarioReport::run(const std::string& label) const {
  for (const auto& r : runs) {
    if (r.label == label) return &r;
  }
  return nullptr;
}

namespace {

std::string hex(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xf];
  return s;
}

// JSON numbers must be finite.
nlohmann::json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::json run_json(const RunResult& r, const std::string& dir) {
  nlohmann::json j;
  j["label"] = r.label;
  j["dir"] = dir;
  j["events_processed"] = r.events_processed;
  j["trace_digest"] = hex(r.trace_digest);
  j["total_pause_frames"] = r.total_pause_frames;
  if (r.config.sweep) {
    if (const ContainerSpec* c = r.config.find(r.config.sweep->container)) {
      j["variant"] = {{"container", c->id},
                      {"kind", std::string(to_string(c->workload.kind))},
                      {"verb", std::string(to_string(primary_verb(c->workload)))},
                      {"mode", std::string(to_string(c->workload.mode))},
                      {"qps", c->workload.kind == WorkloadKind::kIdle ? 0 : c->workload.qps},
                      {"message_bytes", c->workload.message_bytes}};
    }
  }
  nlohmann::json containers = nlohmann::json::array();
  for (const auto& c : r.config.containers) {
    containers.push_back({{"id", c.id},
                          {"name", c.name},
                          {"role", std::string(to_string(c.role))},
                          {"mean_goodput_bps", num(r.mean_goodput(c.id, SimTime{}, r.config.duration))},
                          {"ever_flagged", r.ever_flagged.at(c.id)},
                          {"qp_creation_failures", r.qp_creation_failures.at(c.id)}});
  }
  j["containers"] = containers;
  nlohmann::json amp = nlohmann::json::array();
  for (const auto& e : r.amplification.entries) {
    amp.push_back({{"verb", std::string(to_string(e.verb))},
                   {"mode", std::string(to_string(e.mode))},
                   {"ratio", e.ratio() ? num(*e.ratio()) : nlohmann::json(nullptr)}});
  }
  j["amplification"] = amp;
  j["actions"] = r.decisions.size();
  return j;
}

void write_run_files(const RunResult& r, const std::filesystem::path& root, const std::string& rel,
                     std::vector<std::string>& files) {
  const std::filesystem::path dir = rel.empty() ? root : root / rel;
  std::filesystem::create_directories(dir);
  const std::string prefix = rel.empty() ? "" : rel + "/";
  const std::pair<const char*, const std::string*> outputs[] = {
      {"telemetry.csv", &r.telemetry_csv},
      {"amplification.csv", &r.amplification_csv},
      {"summary.csv", &r.summary_csv},
      {"decisions.csv", &r.decisions_csv},
  };
  for (const auto& [name, content] : outputs) {
    write_text_file(dir / name, *content);
    files.push_back(prefix + name);
  }
}

}  // namespace

ScenarioReport run_scenario(const ScenarioConfig& config,
                            const std::optional<std::filesystem::path>& out_root, unsigned jobs) {
  const auto started = std::chrono::steady_clock::now();
  ScenarioReport report;
  report.name = config.name;
  report.seed = config.seed;

  std::vector<std::pair<ScenarioConfig, std::string>> plan;
  if (config.sweep) {
    for (const auto& v : config.sweep->variants) plan.emplace_back(apply_variant(config, v), v.label);
  } else {
    plan.emplace_back(config, "");
  }

  report.runs.resize(plan.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(jobs == 0 ? std::thread::hardware_concurrency() : jobs,
                                      static_cast<unsigned>(plan.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(plan.size());
  auto work = [&] {
    for (std::size_t i = next++; i < plan.size(); i = next++) {
      try {
        report.runs[i] = simulate(plan[i].first, plan[i].second);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (const auto& a : config.assertions) report.checks.push_back(evaluate_check(a, report.runs));

  if (out_root) {
    report.out_dir = *out_root / (config.name + "-seed" + std::to_string(config.seed));
    std::filesystem::create_directories(report.out_dir);
    nlohmann::json j;
    j["name"] = config.name;
    j["description"] = config.description;
    j["seed"] = config.seed;
    j["duration_s"] = config.duration.seconds();
    j["telemetry_period_ms"] = config.telemetry_period.ticks / SimTime::kTicksPerMs;
    j["defense"] = std::string(to_string(config.defense.mode));
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : report.runs) {
      const std::string rel = r.label.empty() ? "" : "runs/" + r.label;
      write_run_files(r, report.out_dir, rel, report.files);
      runs.push_back(run_json(r, rel.empty() ? "." : rel));
    }
    j["runs"] = runs;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
      nlohmann::json m = nlohmann::json::object();
      for (const auto& [k, v] : c.metrics) m[k] = num(v);
      checks.push_back({{"check", c.check}, {"passed", c.passed}, {"detail", c.detail}, {"metrics", m}});
    }
    j["checks"] = checks;
    j["passed"] = report.passed();

    write_text_file(report.out_dir / "resolved.yaml", emit_scenario(config));
    report.files.emplace_back("resolved.yaml");
    report.files.emplace_back("report.json");
    j["files"] = report.files;
    write_text_file(report.out_dir / "report.json", j.dump(2) + "\n");
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace rnicsim
