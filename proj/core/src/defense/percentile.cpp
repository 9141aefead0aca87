#include "rnicsim/defense/percentile.hpp"

#include <algorithm>
#include <cmath>

#include "rnicsim/engine/check.hpp"

namespace rnicsim {

double nearest_rank_percentile(std::vector<double> values, double p) {
  RNICSIM_CHECK(p > 0.0 && p <= 100.0, "percentile must be in (0, 100]");
  if (values.empty()) return 0.0;
  const auto n = values.size();
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(n) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, n);
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                   values.end());
  return values[rank - 1];
}

}  // namespace rnicsim
