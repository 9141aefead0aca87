#include "rnicsim/defense/qos.hpp"

#include <set>

namespace rnicsim {

std::vector<std::string> QosPolicy::validate() const {
  std::vector<std::string> errors;
  double total = 0.0;
  std::set<ContainerId> seen;
  for (const auto& e : entries) {
    const std::string who = "qos policy for container " + std::to_string(e.container);
    if (!seen.insert(e.container).second) errors.push_back(who + ": listed twice");
    if (e.ets_weight < 0.0 || e.ets_weight > 1.0) {
      errors.push_back(who + ": ets_weight must be in [0, 1]");
    }
    total += e.ets_weight;
    if (e.max_rate_bps && *e.max_rate_bps <= 0.0) {
      errors.push_back(who + ": max_rate must be positive");
    }
    if (e.min_rate_bps && *e.min_rate_bps < 0.0) {
      errors.push_back(who + ": min_rate must be non-negative");
    }
    if (e.max_rate_bps && e.min_rate_bps && *e.min_rate_bps > *e.max_rate_bps) {
      errors.push_back(who + ": min_rate exceeds max_rate");
    }
  }
  if (total > 1.0 + 1e-9) errors.push_back("qos policy: ets weights sum to more than 1");
  return errors;
}

const QosEntry* QosPolicy::find(ContainerId id) const {
  for (const auto& e : entries) {
    if (e.container == id) return &e;
  }
  return nullptr;
}

void qos_enforce(Rnic& rnic, const QosPolicy& policy) {
  for (const auto& e : policy.entries) {
    std::optional<double> max_bytes;
    std::optional<double> min_bytes;
    if (e.max_rate_bps) max_bytes = *e.max_rate_bps / 8.0;
    if (e.min_rate_bps) min_bytes = *e.min_rate_bps / 8.0;
    rnic.set_rate_limits(e.container, max_bytes, min_bytes);
  }
}

std::map<ContainerId, double> ets_fair_shares(const std::vector<ContainerId>& active,
                                              const QosPolicy* policy) {
  std::map<ContainerId, double> weights;
  double assigned = 0.0;
  std::size_t unassigned = 0;
  for (ContainerId id : active) {
    const QosEntry* e = policy ? policy->find(id) : nullptr;
    if (e && e->ets_weight > 0.0) {
      weights[id] = e->ets_weight;
      assigned += e->ets_weight;
    } else {
      ++unassigned;
    }
  }
  if (unassigned > 0) {
    const double rest = assigned < 1.0 ? (1.0 - assigned) / static_cast<double>(unassigned)
                                       : 1.0 / static_cast<double>(active.size());
    for (ContainerId id : active) {
      if (!weights.count(id)) weights[id] = rest;
    }
  }
  double sum = 0.0;
  for (const auto& [id, w] : weights) sum += w;
  if (sum > 0.0) {
    for (auto& [id, w] : weights) w /= sum;
  }
  return weights;
}

}  // namespace rnicsim
