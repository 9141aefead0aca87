#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rnicsim/scenario/runner.hpp"

namespace rnicsim {

// Names accepted in a scenario's `assertions` list.
const std::vector<std::string>& known_checks();
bool is_known_check(std::string_view name);

// Evaluates one assertion over all runs of a scenario. Missing parameters or
// metrics produce a failed outcome naming what is missing.
CheckOutcome evaluate_check(const AssertionSpec& assertion, const std::vector<RunResult>& runs);

}  // namespace rnicsim
