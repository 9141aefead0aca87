#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rnicsim/engine/sim_time.hpp"
#include "rnicsim/rnic/rnic.hpp"

namespace rnicsim {

struct QosEntry {
  ContainerId container = 0;
  double ets_weight = 0.0;  // fraction of link
  std::optional<double> max_rate_bps;
  std::optional<double> min_rate_bps;

  bool operator==(const QosEntry&) const = default;
};

struct QosPolicy {
  SimTime apply_at{};
  std::vector<QosEntry> entries;

  // One message per violated constraint; empty when valid.
  std::vector<std::string> validate() const;
  const QosEntry* find(ContainerId id) const;

  bool operator==(const QosPolicy&) const = default;
};

// Installs the policy's caps and floors in the RNIC scheduler. ETS weights
// are not scheduler inputs here; they only size fair shares.
void qos_enforce(Rnic& rnic, const QosPolicy& policy);

// Weighted share of each listed container. Containers without a weight get
// an equal split of whatever weight is left unassigned (equal split overall
// when no policy is given).
std::map<ContainerId, double> ets_fair_shares(const std::vector<ContainerId>& active,
                                              const QosPolicy* policy);

}  // namespace rnicsim
