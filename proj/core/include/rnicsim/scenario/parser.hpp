#pragma once

#include <filesystem>
#include <string>

#include "rnicsim/scenario/config.hpp"

namespace rnicsim {

// Parses and validates a scenario. Throws ConfigError listing every syntax
// or semantic violation found; positions read "<source>:<line>:<col>".
ScenarioConfig parse_scenario(const std::string& text, const std::string& source = "<string>");
ScenarioConfig parse_scenario_file(const std::filesystem::path& path);

// Full config with every default materialized; parse_scenario() of the
// result compares equal to `config`.
std::string emit_scenario(const ScenarioConfig& config);

}  // namespace rnicsim
