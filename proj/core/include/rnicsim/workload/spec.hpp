#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rnicsim/engine/sim_time.hpp"
#include "rnicsim/rnic/types.hpp"

namespace rnicsim {

enum class WorkloadKind : std::uint8_t {
  kWriteBw,
  kReadLat,
  kQueueFlood,
  kCacheDepletion,
  kVerbsFlood,
  kVerbsAmplification,
  kIdle,
};

enum class Role : std::uint8_t { kVictim, kAttacker, kDecoy };

std::string_view to_string(WorkloadKind k);
std::string_view to_string(Role r);
std::optional<WorkloadKind> parse_workload_kind(std::string_view s);
std::optional<Role> parse_role(std::string_view s);

// At `at` (absolute simulation time) the generator grows or shrinks to
// `qps` queue pairs.
struct RampStep {
  SimTime at{};
  std::uint32_t qps = 0;

  bool operator==(const RampStep&) const = default;
};

struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::kIdle;
  TransportMode mode = TransportMode::kRC;
  VerbKind verb = VerbKind::kWrite;  // flood and amplification kinds
  std::uint64_t message_bytes = 65536;
  std::uint32_t qps = 1;             // QPs created at start when qp_ramp is empty
  std::vector<RampStep> qp_ramp;
  SimTime start{};
  std::optional<SimTime> duration;   // runs to the end of the scenario when absent

  std::uint64_t batch = 64;                 // queue_flood SEND/RECV batch length
  std::uint64_t page_stride = 1;            // cache_depletion address step, in pages
  std::uint64_t working_set_pages = 4790;   // read_lat random page range

  bool operator==(const WorkloadSpec&) const = default;
};

struct ContainerSpec {
  ContainerId id = 0;
  std::string name;
  Role role = Role::kVictim;
  std::uint32_t vf = 0;
  WorkloadSpec workload;

  bool operator==(const ContainerSpec&) const = default;
};

// Verb a workload issues (read_lat: READ, write_bw: WRITE, queue_flood: SEND
// and RECV, configured verb otherwise).
VerbKind primary_verb(const WorkloadSpec& w);

// Semantic violations, each naming the offending field; `where` prefixes
// every message.
std::vector<std::string> validate(const WorkloadSpec& w, Role role, const std::string& where);

}  // namespace rnicsim
