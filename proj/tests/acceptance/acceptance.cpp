// Acceptance suite: one PASS/FAIL line per criterion.
//
//   rnicsim_acceptance [scenario_dir]
//
// Scenario assertions are re-evaluated with the acceptance thresholds
// written here, overriding whatever the YAML carries, so loosening a
// scenario file cannot loosen the suite. Container ids and time windows
// still come from the YAML.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rnicsim/scenario/batch.hpp"
#include "rnicsim/scenario/checks.hpp"

namespace fs = std::filesystem;
using namespace rnicsim;

namespace {

struct Verdict {
  bool passed = false;
  std::string detail;
};

struct Forced {
  std::map<std::string, double> numbers;
  std::map<std::string, std::vector<double>> lists;
};

const ScenarioReport* find_report(const std::vector<BatchEntry>& pass, const std::string& name) {
  for (const auto& e : pass) {
    if (e.report && e.report->name == name) return &*e.report;
  }
  return nullptr;
}

// Re-evaluates the scenario's `check` assertion with `forced` thresholds.
Verdict forced_check(const std::vector<BatchEntry>& pass, const std::string& scenario,
                     const std::string& check, const Forced& forced) {
  const ScenarioReport* r = find_report(pass, scenario);
  if (!r) return {false, scenario + " did not run"};
  if (r->runs.empty()) return {false, scenario + " produced no runs"};
  const auto& assertions = r->runs.front().config.assertions;
  for (const auto& a : assertions) {
    if (a.check != check) continue;
    AssertionSpec spec = a;
    for (const auto& [k, v] : forced.numbers) spec.params.numbers[k] = v;
    for (const auto& [k, v] : forced.lists) spec.params.lists[k] = v;
    const CheckOutcome o = evaluate_check(spec, r->runs);
    return {o.passed, o.detail};
  }
  return {false, scenario + " has no " + check + " assertion"};
}

Verdict both(const Verdict& a, const Verdict& b) {
  return {a.passed && b.passed, a.detail + "; " + b.detail};
}

Verdict oracles() {
  const auto lru = oracle::lru_suite(100, 100000, 0x1ea5e);
  const auto pfc = oracle::pfc_suite(50, 20000, 0xbeef);
  const auto pct = oracle::percentile_suite(100, 0x5eed);
  std::ostringstream os;
  os << "LRU " << lru.cases - lru.mismatches << "/" << lru.cases << " traces, PFC "
     << pfc.cases - pfc.mismatches << "/" << pfc.cases << " profiles, percentile "
     << pct.cases - pct.mismatches << "/" << pct.cases << " cases";
  for (const auto* s : {&lru, &pfc, &pct}) {
    if (!s->ok()) os << "; first mismatch " << s->first_failure;
  }
  return {lru.ok() && pfc.ok() && pct.ok(), os.str()};
}

// Compares the telemetry and decision exports of every run in two passes.
std::vector<std::string> diff_passes(const std::vector<BatchEntry>& a,
                                     const std::vector<BatchEntry>& b, const std::string& tag) {
  std::vector<std::string> out;
  if (a.size() != b.size()) return {tag + ": scenario count differs"};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string name = a[i].file.filename().string();
    if (!a[i].report || !b[i].report) {
      out.push_back(tag + ": " + name + " did not run");
      continue;
    }
    const auto& ra = a[i].report->runs;
    const auto& rb = b[i].report->runs;
    if (ra.size() != rb.size()) {
      out.push_back(tag + ": " + name + " run count differs");
      continue;
    }
    for (std::size_t k = 0; k < ra.size(); ++k) {
      const std::string where = tag + ": " + name + (ra[k].label.empty() ? "" : "/" + ra[k].label);
      if (ra[k].telemetry_csv != rb[k].telemetry_csv) out.push_back(where + " telemetry differs");
      if (ra[k].decisions_csv != rb[k].decisions_csv) out.push_back(where + " decisions differ");
    }
  }
  return out;
}

std::vector<BatchEntry> timed_pass(const std::vector<fs::path>& files, unsigned jobs,
                                   const char* tag) {
  const auto t0 = std::chrono::steady_clock::now();
  auto entries = run_batch(files, std::nullopt, jobs);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "pass " << tag << " (jobs " << jobs << "): " << std::fixed << std::setprecision(1)
            << s << " s\n";
  for (const auto& e : entries) {
    if (e.status == BatchStatus::kConfigError || e.status == BatchStatus::kRunError) {
      std::cerr << "  " << e.file.string() << ":";
      for (const auto& m : e.errors) std::cerr << " " << m;
      std::cerr << "\n";
    }
  }
  return entries;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path(RNICSIM_SCENARIO_DIR);
  const std::vector<fs::path> files = scenario_files(dir);

  const auto first = timed_pass(files, 1, "1");

  std::vector<std::pair<std::string, Verdict>> rows;

  {
    Verdict v = forced_check(first, "fig3_qp_sweep", "fair_share_curve",
                             {{{"tolerance", 0.05}, {"min_drop", 0.85}}, {}});
    const ScenarioReport* r = find_report(first, "fig3_qp_sweep");
    const double wall = r ? r->wall_seconds : 1e9;
    std::ostringstream os;
    os << v.detail << "; runtime " << std::fixed << std::setprecision(2) << wall << " s";
    rows.emplace_back("fair-share contention", Verdict{v.passed && wall < 10.0, os.str()});
  }
  rows.emplace_back("queue flooding, single victim",
                    forced_check(first, "fig5_queue_flood", "goodput_drop",
                                 {{{"max_ratio", 0.10}, {"attacker_max_link_fraction", 0.20}}, {}}));
  rows.emplace_back("multi-victim flooding",
                    forced_check(first, "fig6_multi_victim", "multi_victim",
                                 {{{"max_ratio", 0.10}}, {}}));
  rows.emplace_back("cache depletion",
                    forced_check(first, "fig7_cache_depletion", "cache_depletion",
                                 {{{"min_rise", 1.0}, {"latency_factor", 100.0}}, {}}));
  rows.emplace_back("PAUSE-frame structure",
                    forced_check(first, "fig8_pause_sweep", "pause_structure",
                                 {{}, {{"strict_qps", {4, 8, 16, 24}}}}));
  rows.emplace_back("amplification ratios",
                    forced_check(first, "fig9_amplification", "amplification",
                                 {{{"target_send", 18.26},
                                   {"target_write", 22.01},
                                   {"target_read", 20.1},
                                   {"target_atomic", 23.1},
                                   {"tolerance", 0.01},
                                   {"parity", 0.10}},
                                  {}}));
  rows.emplace_back("QoS baseline behavior",
                    both(forced_check(first, "qos_cap_demo", "qos_cap", {{{"tolerance", 0.05}}, {}}),
                         forced_check(first, "qos_insufficiency", "qos_insufficiency",
                                      {{{"max_ratio", 0.40}}, {}})));
  rows.emplace_back("HT-Verbs mitigation",
                    forced_check(first, "htverbs_mitigation", "htverbs_mitigation",
                                 {{{"flag_within_ticks", 3},
                                   {"recover_within_ticks", 10},
                                   {"recover_ratio", 0.8},
                                   {"release_within_ticks", 10}},
                                  {}}));
  {
    Verdict v = forced_check(first, "htverbs_no_false_positive", "no_false_positive", {});
    const ScenarioReport* r = find_report(first, "htverbs_no_false_positive");
    if (r && !r->runs.empty() && r->runs.front().config.duration < SimTime::from_seconds(60.0)) {
      v = {false, "run shorter than 60 s"};
    }
    rows.emplace_back("no false positives", v);
  }
  rows.emplace_back("oracle equivalence", oracles());

  {
    const auto second = timed_pass(files, 1, "2");
    const auto parallel = timed_pass(files, 4, "3");
    auto diffs = diff_passes(first, second, "rerun");
    const auto par = diff_passes(first, parallel, "jobs 4");
    diffs.insert(diffs.end(), par.begin(), par.end());
    std::size_t runs = 0;
    for (const auto& e : first) runs += e.report ? e.report->runs.size() : 0;
    std::ostringstream os;
    if (diffs.empty()) {
      os << files.size() << " scenarios, " << runs << " runs byte-identical across 3 passes";
    } else {
      os << diffs.size() << " differences, first: " << diffs.front();
    }
    rows.emplace_back("determinism", Verdict{diffs.empty() && !files.empty(), os.str()});
  }

  int failed = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [name, v] = rows[i];
    std::cout << (v.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << i + 1 << ". " << name
              << ": " << v.detail << "\n";
    failed += v.passed ? 0 : 1;
  }
  std::cout << rows.size() - static_cast<std::size_t>(failed) << "/" << rows.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
