#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rnicsim/defense/htverbs.hpp"
#include "rnicsim/scenario/config.hpp"
#include "rnicsim/telemetry/collector.hpp"

namespace rnicsim {

// Everything one simulation produced. Exports are rendered in memory so
// determinism checks can compare bytes without touching disk.
struct RunResult {
  std::string label;  // sweep variant label, empty for a plain run
  ScenarioConfig config;
  std::vector<TelemetrySnapshot> telemetry;
  AmplificationReport amplification;
  std::vector<ThrottleAction> decisions;
  std::map<ContainerId, bool> ever_flagged;
  std::map<ContainerId, std::uint64_t> qp_creation_failures;
  std::uint64_t total_pause_frames = 0;
  std::uint64_t events_processed = 0;
  std::uint64_t trace_digest = 0;

  std::string telemetry_csv;
  std::string amplification_csv;
  std::string summary_csv;
  std::string decisions_csv;

  std::vector<TelemetrySnapshot> series(ContainerId id) const;
  // Mean goodput of `id` over snapshots with t in (from, to].
  double mean_goodput(ContainerId id, SimTime from, SimTime to) const;
};

// Runs one fully resolved config (no sweep expansion).
RunResult simulate(const ScenarioConfig& config, const std::string& label = "");

struct CheckOutcome {
  std::string check;
  bool passed = false;
  std::string detail;
  std::map<std::string, double> metrics;
};

struct ScenarioReport {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<RunResult> runs;
  std::vector<CheckOutcome> checks;
  std::filesystem::path out_dir;
  std::vector<std::string> files;  // relative to out_dir
  double wall_seconds = 0.0;

  bool passed() const;
  const RunResult* run(const std::string& label) const;
};

// Expands sweeps, simulates every run, evaluates assertions, and, when
// out_root is set, writes <out_root>/<name>-seed<seed>/. Sweep variants run
// on up to `jobs` threads (0 = hardware concurrency); results do not depend
// on the thread count.
ScenarioReport run_scenario(const ScenarioConfig& config,
                            const std::optional<std::filesystem::path>& out_root,
                            unsigned jobs = 1);

}  // namespace rnicsim
