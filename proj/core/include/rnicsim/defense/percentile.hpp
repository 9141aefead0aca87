#pragma once

#include <vector>

namespace rnicsim {

// Nearest-rank percentile: the smallest value with at least p% of the sample
// at or below it. p in (0, 100]; an empty sample yields 0.
double nearest_rank_percentile(std::vector<double> values, double p);

}  // namespace rnicsim
