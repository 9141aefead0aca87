#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rnicsim/scenario/runner.hpp"

namespace rnicsim {

enum class BatchStatus : std::uint8_t { kPassed, kAssertionFailed, kConfigError, kRunError };

struct BatchEntry {
  std::filesystem::path file;
  BatchStatus status = BatchStatus::kPassed;
  std::vector<std::string> errors;  // config violations or the run error
  std::optional<ScenarioReport> report;
};

// Scenario files (*.yaml, *.yml) directly under `dir`, sorted by path.
std::vector<std::filesystem::path> scenario_files(const std::filesystem::path& dir);

// Runs every file on up to `jobs` threads. Each scenario runs whole on one
// worker, failures are collected rather than stopping the batch, and
// entries come back in input order whatever the thread count.
std::vector<BatchEntry> run_batch(const std::vector<std::filesystem::path>& files,
                                  const std::optional<std::filesystem::path>& out_root,
                                  unsigned jobs);

// 0 when every entry passed, 2 when any config was invalid, 1 otherwise.
int batch_exit_code(const std::vector<BatchEntry>& entries);

}  // namespace rnicsim
