#include <gtest/gtest.h>

#include <algorithm>

#include "rnicsim/scenario/batch.hpp"
#include "rnicsim/scenario/parser.hpp"

namespace rnicsim {
namespace {

std::vector<std::string> errors_of(const std::string& text) {
  try {
    parse_scenario(text, "t.yaml");
  } catch (const ConfigError& e) {
    return e.violations();
  }
  return {};
}

bool any_contains(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

const char* kMinimal = R"(
version: 1
name: minimal
containers:
  - {id: 1, name: v, role: victim, vf: 1, workload: {kind: write_bw}}
)";

TEST(Parser, MinimalFileGetsDefaults) {
  const ScenarioConfig c = parse_scenario(kMinimal);
  EXPECT_EQ(c.name, "minimal");
  EXPECT_EQ(c.seed, 1u);
  EXPECT_EQ(c.duration, SimTime::from_seconds(10.0));
  EXPECT_EQ(c.telemetry_period, SimTime::from_ms(100));
  EXPECT_EQ(c.rnic, RnicConfig{});
  EXPECT_EQ(c.defense.mode, DefenseMode::kNone);
  ASSERT_EQ(c.containers.size(), 1u);
  EXPECT_EQ(c.containers[0].workload.mode, TransportMode::kRC);
  EXPECT_EQ(c.containers[0].workload.message_bytes, 65536u);
  EXPECT_EQ(c.containers[0].workload.qps, 1u);
}

TEST(Parser, UcReadWorkloadRejected) {
  const auto e = errors_of(R"(
version: 1
name: x
containers:
  - {id: 1, name: a, role: attacker, vf: 1, workload: {kind: cache_depletion, mode: UC, verb: READ}}
)");
  ASSERT_FALSE(e.empty());
  EXPECT_TRUE(any_contains(e, "UC")) << e[0];
}

TEST(Parser, DuplicateContainerIdRejected) {
  const auto e = errors_of(R"(
version: 1
name: x
containers:
  - {id: 1, name: a, role: victim, vf: 1, workload: {kind: write_bw}}
  - {id: 1, name: b, role: victim, vf: 2, workload: {kind: write_bw}}
)");
  EXPECT_TRUE(any_contains(e, "duplicate container id"));
}

TEST(Parser, SyntaxErrorCarriesPosition) {
  const auto e = errors_of("version: 1\nname: x\ncontainers: [\n");
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].rfind("t.yaml:4:1:", 0), 0u) << e[0];
}

TEST(Parser, UnknownKeyCarriesPosition) {
  const auto e = errors_of(std::string(kMinimal) + "bogus: 3\n");
  ASSERT_FALSE(e.empty());
  EXPECT_TRUE(any_contains(e, "t.yaml:6:1")) << e[0];
  EXPECT_TRUE(any_contains(e, "bogus"));
}

TEST(Parser, CollectsEveryViolation) {
  const auto e = errors_of(R"(
version: 2
name: x
duration_s: -1
containers:
  - {id: 1, name: a, role: victim, vf: 1, workload: {kind: nope}}
assertions:
  - {check: not_a_check}
)");
  EXPECT_GE(e.size(), 4u);
}

TEST(Parser, ZeroWireOverheadRejected) {
  const auto e = errors_of(std::string(kMinimal) + "rnic:\n  wire_overhead:\n    WRITE: {RC: 0, UC: 5}\n");
  EXPECT_TRUE(any_contains(e, "wire_overhead"));
}

TEST(Parser, BundledScenariosRoundTrip) {
  const auto files = scenario_files(RNICSIM_SCENARIO_DIR);
  ASSERT_EQ(files.size(), 10u);
  for (const auto& f : files) {
    const ScenarioConfig c = parse_scenario_file(f);
    const std::string emitted = emit_scenario(c);
    EXPECT_EQ(parse_scenario(emitted, f.string()), c) << f;
    EXPECT_EQ(emit_scenario(parse_scenario(emitted)), emitted) << f;
  }
}

TEST(Parser, MissingFileIsConfigError) {
  EXPECT_THROW(parse_scenario_file("/nonexistent/x.yaml"), ConfigError);
}

}  // namespace
}  // namespace rnicsim
