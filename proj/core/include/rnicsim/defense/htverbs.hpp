#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rnicsim/defense/qos.hpp"
#include "rnicsim/rnic/rnic.hpp"
#include "rnicsim/telemetry/snapshot.hpp"

namespace rnicsim {

enum class Tier : std::uint8_t { kHot, kWarm, kCold };

enum class ResourceClass : std::uint8_t {
  kTxPipeline,
  kRxPipeline,
  kMtt,
  kIcm,
  kWqeCache,
  kQpTable,
};
inline constexpr std::size_t kResourceClassCount = 6;

// Per-container quantities the analyzer keeps thresholds for.
enum class Metric : std::uint8_t {
  kTxOcc,
  kRxOcc,
  kMttMiss,
  kIcmMiss,
  kWqeMiss,
  kQpCount,
  kQpCreateRate,
  kEfficiency,  // goodput / (tx_occupancy * link rate)
};
inline constexpr std::size_t kMetricCount = 8;

std::string_view to_string(Tier t);
std::string_view to_string(ResourceClass r);
std::string_view to_string(Metric m);

// The metric that decides the tier of a resource class.
Metric metric_of(ResourceClass r);

enum EvidenceBits : std::uint8_t {
  kEvidenceNone = 0,
  kExcessiveQpCreation = 1,
  kPressureWithoutThroughput = 2,
};
std::string evidence_to_string(std::uint8_t evidence);

struct DefenseSample {
  ContainerId container = 0;
  std::array<double, kMetricCount> values{};
  bool pooled = true;  // contributes to thresholds

  double at(Metric m) const { return values[static_cast<std::size_t>(m)]; }
};

// Builds one sample per container with any QPs; `samples` keeps snapshot order.
std::vector<DefenseSample> make_samples(const std::vector<TelemetrySnapshot>& tick, double link_bps);

struct Cut {
  double hot = 0.0;
  double cold = 0.0;
};

struct ThresholdState {
  std::array<Cut, kMetricCount> cuts{};
  std::size_t samples = 0;

  const Cut& at(Metric m) const { return cuts[static_cast<std::size_t>(m)]; }
};

// Percentile cuts over every pooled sample in the window.
ThresholdState update_thresholds(const std::deque<std::vector<DefenseSample>>& window,
                                 double hot_percentile = 90.0, double cold_percentile = 10.0);

Tier classify_value(double value, const Cut& cut);
std::array<Tier, kResourceClassCount> classify(const DefenseSample& sample,
                                               const ThresholdState& thresholds);

struct AnomalyVerdict {
  ContainerId container = 0;
  bool flagged = false;
  std::uint8_t evidence = kEvidenceNone;
  std::uint32_t consecutive_intervals = 0;
};

enum class ActionKind : std::uint8_t { kPace, kDeprioritize, kBlock, kRelease };
std::string_view to_string(ActionKind k);

struct ThrottleAction {
  SimTime t{};
  ContainerId container = 0;
  std::optional<QpId> qp;  // absent: container-wide (QP creation)
  ActionKind kind = ActionKind::kPace;
  double pace_rate = 0.0;  // verbs per second for kPace
  std::uint8_t evidence = kEvidenceNone;
};

enum class Enforcement : std::uint8_t { kPace, kDeprioritize };

struct HtVerbsParams {
  std::size_t window_len = 100;
  std::uint32_t persistence_intervals = 3;
  double hot_percentile = 90.0;
  double cold_percentile = 10.0;
  double efficiency_floor = 0.5;
  double hot_restrict_fraction = 0.1;
  Enforcement enforcement = Enforcement::kPace;

  std::vector<std::string> validate() const;
  bool operator==(const HtVerbsParams&) const = default;
};

class HtVerbsController {
 public:
  explicit HtVerbsController(HtVerbsParams params, const QosPolicy* weights = nullptr);

  // One defense tick: updates thresholds, classifies, detects, and returns
  // the actions to apply. Reads QP lists and service estimates from `rnic`.
  std::vector<ThrottleAction> on_tick(SimTime t, const std::vector<TelemetrySnapshot>& tick,
                                      const Rnic& rnic);

  const ThresholdState& thresholds() const { return thresholds_; }
  const std::map<ContainerId, AnomalyVerdict>& verdicts() const { return verdicts_; }
  std::optional<std::array<Tier, kResourceClassCount>> tiers_of(ContainerId id) const;
  const std::vector<ThrottleAction>& decision_log() const { return log_; }
  bool ever_flagged(ContainerId id) const;
  const HtVerbsParams& params() const { return params_; }

 private:
  struct State {
    AnomalyVerdict verdict;
    std::uint32_t clear_streak = 0;
    bool ever_flagged = false;
    bool restricted = false;
    bool creation_blocked = false;
    std::map<QpId, double> paced;
  };

  std::uint8_t evidence_for(const DefenseSample& s) const;
  void enforce(SimTime t, const DefenseSample& s, State& st,
               const std::array<Tier, kResourceClassCount>& tiers, double fair_share,
               const Rnic& rnic, std::vector<ThrottleAction>& out);
  void release(SimTime t, ContainerId id, State& st, std::vector<ThrottleAction>& out);

  HtVerbsParams params_;
  const QosPolicy* weights_;
  std::deque<std::vector<DefenseSample>> window_;
  ThresholdState thresholds_;
  std::map<ContainerId, State> state_;
  std::map<ContainerId, AnomalyVerdict> verdicts_;
  std::map<ContainerId, std::array<Tier, kResourceClassCount>> tiers_;
  std::vector<ThrottleAction> log_;
};

// Applies actions to the RNIC in order.
void apply_actions(Rnic& rnic, const std::vector<ThrottleAction>& actions);

std::string decision_log_csv(const std::vector<ThrottleAction>& actions);

}  // namespace rnicsim
