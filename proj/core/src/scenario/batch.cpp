#include "rnicsim/scenario/batch.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "rnicsim/scenario/parser.hpp"

namespace rnicsim {

std::vector<std::filesystem::path> scenario_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const auto ext = e.path().extension();
    if (e.is_regular_file() && (ext == ".yaml" || ext == ".yml")) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BatchEntry> run_batch(const std::vector<std::filesystem::path>& files,
                                  const std::optional<std::filesystem::path>& out_root,
                                  unsigned jobs) {
  std::vector<BatchEntry> entries(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      BatchEntry& e = entries[i];
      e.file = files[i];
      try {
        const ScenarioConfig config = parse_scenario_file(files[i]);
        e.report = run_scenario(config, out_root, 1);
        e.status = e.report->passed() ? BatchStatus::kPassed : BatchStatus::kAssertionFailed;
      } catch (const ConfigError& err) {
        e.status = BatchStatus::kConfigError;
        e.errors = err.violations();
      } catch (const std::exception& err) {
        e.status = BatchStatus::kRunError;
        e.errors = {err.what()};
      }
    }
  };
  const unsigned n =
      std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return entries;
}

int batch_exit_code(const std::vector<BatchEntry>& entries) {
  int code = 0;
  for (const auto& e : entries) {
    if (e.status == BatchStatus::kConfigError) code = 2;
    else if (e.status != BatchStatus::kPassed && code == 0) code = 1;
  }
  return code;
}

}  // namespace rnicsim
