#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rnicsim/defense/htverbs.hpp"
#include "rnicsim/defense/qos.hpp"
#include "rnicsim/engine/sim_time.hpp"
#include "rnicsim/rnic/config.hpp"
#include "rnicsim/workload/spec.hpp"

namespace rnicsim {

inline constexpr int kScenarioSchemaVersion = 1;

enum class DefenseMode : std::uint8_t { kNone, kQos, kHtVerbs, kBoth };
std::string_view to_string(DefenseMode m);
std::optional<DefenseMode> parse_defense_mode(std::string_view s);

struct DefenseConfig {
  DefenseMode mode = DefenseMode::kNone;
  std::optional<QosPolicy> qos;
  HtVerbsParams htverbs;

  bool qos_enabled() const { return mode == DefenseMode::kQos || mode == DefenseMode::kBoth; }
  bool htverbs_enabled() const {
    return mode == DefenseMode::kHtVerbs || mode == DefenseMode::kBoth;
  }
  bool operator==(const DefenseConfig&) const = default;
};

// One run of a sweep: overrides applied to the sweep container's workload.
struct SweepVariant {
  std::string label;
  std::optional<WorkloadKind> kind;
  std::optional<VerbKind> verb;
  std::optional<TransportMode> mode;
  std::optional<std::uint32_t> qps;
  std::optional<std::uint64_t> message_bytes;

  bool operator==(const SweepVariant&) const = default;
};

struct SweepSpec {
  ContainerId container = 0;
  std::vector<SweepVariant> variants;

  bool operator==(const SweepSpec&) const = default;
};

struct CheckParams {
  std::map<std::string, double> numbers;
  std::map<std::string, std::string> strings;
  std::map<std::string, std::vector<double>> lists;

  double number(const std::string& key) const;  // throws std::out_of_range naming key
  double number_or(const std::string& key, double fallback) const;
  const std::vector<double>& list(const std::string& key) const;
  std::string string_or(const std::string& key, const std::string& fallback) const;

  bool operator==(const CheckParams&) const = default;
};

struct AssertionSpec {
  std::string check;
  CheckParams params;

  bool operator==(const AssertionSpec&) const = default;
};

struct ScenarioConfig {
  int version = kScenarioSchemaVersion;
  std::string name;
  std::string description;
  std::uint64_t seed = 1;
  SimTime duration = SimTime::from_seconds(10.0);
  SimTime telemetry_period = SimTime::from_ms(100);
  RnicConfig rnic;
  std::vector<ContainerSpec> containers;
  DefenseConfig defense;
  std::optional<SweepSpec> sweep;
  std::vector<AssertionSpec> assertions;

  const ContainerSpec* find(ContainerId id) const;
  bool operator==(const ScenarioConfig&) const = default;
};

// Thrown by the parser with every violation found, each prefixed by its
// source position when one is known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Cross-field checks on an already-typed config. Empty when valid.
std::vector<std::string> validate(const ScenarioConfig& config);

// The config of one sweep variant (the base config when there is no sweep).
ScenarioConfig apply_variant(const ScenarioConfig& config, const SweepVariant& variant);

}  // namespace rnicsim
