#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plot_data.hpp"
#include "rnicsim/scenario/batch.hpp"
#include "rnicsim/scenario/parser.hpp"
#include "rnicsim/scenario/runner.hpp"

namespace fs = std::filesystem;
using namespace rnicsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitConfig = 2;

void print_checks(std::ostream& os, const ScenarioReport& r) {
  for (const auto& c : r.checks) {
    os << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.check << ": " << c.detail << "\n";
  }
}

int cmd_run(const fs::path& file, std::optional<std::uint64_t> seed, const fs::path& out,
            unsigned jobs) {
  ScenarioConfig config;
  try {
    config = parse_scenario_file(file);
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations()) std::cerr << v << "\n";
    return kExitConfig;
  }
  if (seed) config.seed = *seed;
  const ScenarioReport report = run_scenario(config, out, jobs);
  std::cout << config.name << " seed " << config.seed << " -> " << report.out_dir.string() << " ("
            << report.runs.size() << " run" << (report.runs.size() == 1 ? "" : "s") << ", "
            << report.wall_seconds << " s)\n";
  print_checks(std::cout, report);
  return report.passed() ? kExitOk : kExitAssertion;
}

int cmd_validate(const fs::path& file) {
  try {
    const ScenarioConfig c = parse_scenario_file(file);
    std::cout << file.string() << ": ok (" << c.name << ", " << c.containers.size()
              << " containers)\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations()) std::cerr << v << "\n";
    return kExitConfig;
  }
}

int cmd_batch(const fs::path& dir, const fs::path& out, unsigned jobs) {
  std::vector<fs::path> files;
  try {
    files = scenario_files(dir);
  } catch (const fs::filesystem_error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
  const std::vector<BatchEntry> entries = run_batch(files, out, jobs);
  std::size_t passed = 0;
  for (const auto& e : entries) {
    switch (e.status) {
      case BatchStatus::kPassed:
      case BatchStatus::kAssertionFailed:
        std::cout << (e.status == BatchStatus::kPassed ? "PASS " : "FAIL ") << e.report->name
                  << " -> " << e.report->out_dir.string() << "\n";
        print_checks(std::cout, *e.report);
        break;
      case BatchStatus::kConfigError:
      case BatchStatus::kRunError:
        std::cout << "ERROR " << e.file.string() << "\n";
        for (const auto& v : e.errors) std::cout << "  " << v << "\n";
        break;
    }
    if (e.status == BatchStatus::kPassed) ++passed;
  }
  std::cout << passed << "/" << entries.size() << " scenarios passed\n";
  return batch_exit_code(entries);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-tenant RDMA NIC contention simulator"};
  app.require_subcommand(1);

  fs::path run_file;
  std::optional<std::uint64_t> run_seed;
  fs::path out = "out";
  unsigned run_jobs = 1;
  auto* run = app.add_subcommand("run", "Run one scenario file");
  run->add_option("scenario", run_file, "Scenario YAML")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", run_seed, "Override the scenario seed");
  run->add_option("--out", out, "Output root directory");
  run->add_option("--jobs", run_jobs, "Threads for sweep variants (0 = all cores)");

  fs::path batch_dir;
  unsigned batch_jobs = 1;
  auto* batch = app.add_subcommand("batch", "Run every scenario in a directory");
  batch->add_option("dir", batch_dir, "Scenario directory")->required()->check(CLI::ExistingDirectory);
  batch->add_option("--jobs", batch_jobs, "Scenarios run in parallel")->check(CLI::PositiveNumber);
  batch->add_option("--out", out, "Output root directory");

  fs::path validate_file;
  auto* val = app.add_subcommand("validate", "Parse and validate a scenario file");
  val->add_option("scenario", validate_file, "Scenario YAML")->required()->check(CLI::ExistingFile);

  fs::path report_file;
  std::optional<fs::path> plot_out;
  auto* plot = app.add_subcommand("plot-data", "Flatten a report into long-format plot series");
  plot->add_option("report", report_file, "report.json of a finished run")
      ->required()
      ->check(CLI::ExistingFile);
  plot->add_option("--out", plot_out, "Output CSV (default: plot_data.csv beside the report)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_file, run_seed, out, run_jobs);
    if (*batch) return cmd_batch(batch_dir, out, batch_jobs);
    if (*val) return cmd_validate(validate_file);
    if (*plot) {
      const fs::path dest = plot_out.value_or(report_file.parent_path() / "plot_data.csv");
      const std::size_t rows = write_plot_data(report_file, dest);
      std::cout << dest.string() << ": " << rows << " rows\n";
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
