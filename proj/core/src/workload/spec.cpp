#include "rnicsim/workload/spec.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace rnicsim {

namespace {
std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}
}  // namespace

std::string_view to_string(WorkloadKind k) {
  switch (k) {
    case WorkloadKind::kWriteBw: return "write_bw";
    case WorkloadKind::kReadLat: return "read_lat";
    case WorkloadKind::kQueueFlood: return "queue_flood";
    case WorkloadKind::kCacheDepletion: return "cache_depletion";
    case WorkloadKind::kVerbsFlood: return "verbs_flood";
    case WorkloadKind::kVerbsAmplification: return "verbs_amplification";
    case WorkloadKind::kIdle: return "idle";
  }
  return "?";
}

std::string_view to_string(Role r) {
  switch (r) {
    case Role::kVictim: return "victim";
    case Role::kAttacker: return "attacker";
    case Role::kDecoy: return "decoy";
  }
  return "?";
}

std::optional<WorkloadKind> parse_workload_kind(std::string_view s) {
  const std::string l = lower(s);
  for (auto k : {WorkloadKind::kWriteBw, WorkloadKind::kReadLat, WorkloadKind::kQueueFlood,
                 WorkloadKind::kCacheDepletion, WorkloadKind::kVerbsFlood,
                 WorkloadKind::kVerbsAmplification, WorkloadKind::kIdle}) {
    if (l == to_string(k)) return k;
  }
  return std::nullopt;
}

std::optional<Role> parse_role(std::string_view s) {
  const std::string l = lower(s);
  for (auto r : {Role::kVictim, Role::kAttacker, Role::kDecoy}) {
    if (l == to_string(r)) return r;
  }
  return std::nullopt;
}

VerbKind primary_verb(const WorkloadSpec& w) {
  switch (w.kind) {
    case WorkloadKind::kWriteBw: return VerbKind::kWrite;
    case WorkloadKind::kReadLat: return VerbKind::kRead;
    case WorkloadKind::kQueueFlood: return VerbKind::kSend;
    case WorkloadKind::kCacheDepletion:
    case WorkloadKind::kVerbsFlood:
    case WorkloadKind::kVerbsAmplification:
    case WorkloadKind::kIdle: return w.verb;
  }
  return w.verb;
}

std::vector<std::string> validate(const WorkloadSpec& w, Role role, const std::string& where) {
  std::vector<std::string> errors;
  auto err = [&](const std::string& m) { errors.push_back(where + ": " + m); };

  if (role == Role::kDecoy && w.kind != WorkloadKind::kIdle) {
    err("decoy containers generate no traffic; workload.kind must be idle");
  }
  const bool attack = w.kind == WorkloadKind::kQueueFlood ||
                      w.kind == WorkloadKind::kCacheDepletion ||
                      w.kind == WorkloadKind::kVerbsFlood ||
                      w.kind == WorkloadKind::kVerbsAmplification;
  if (attack && role != Role::kAttacker) {
    err("workload.kind " + std::string(to_string(w.kind)) + " requires role attacker");
  }
  if ((w.kind == WorkloadKind::kWriteBw || w.kind == WorkloadKind::kReadLat) &&
      w.mode != TransportMode::kRC) {
    err("workload.kind " + std::string(to_string(w.kind)) + " requires mode RC");
  }
  if (w.kind == WorkloadKind::kCacheDepletion && !verb_addressed(w.verb)) {
    err("cache_depletion needs a one-sided verb (READ or WRITE), got " +
        std::string(to_string(w.verb)));
  }
  if (w.kind == WorkloadKind::kVerbsFlood || w.kind == WorkloadKind::kVerbsAmplification ||
      w.kind == WorkloadKind::kCacheDepletion) {
    if (w.verb == VerbKind::kRecv) err("workload.verb RECV cannot be flooded on its own");
    if (!verb_legal(w.verb, w.mode)) {
      err("workload.verb " + std::string(to_string(w.verb)) + " is not available in " +
          std::string(to_string(w.mode)) + " mode (UC has no one-sided READ/ATOMIC)");
    }
  }
  if (w.kind != WorkloadKind::kIdle && w.kind != WorkloadKind::kQueueFlood &&
      w.kind != WorkloadKind::kReadLat && w.message_bytes == 0) {
    err("workload.message_bytes must be positive");
  }
  for (std::size_t i = 1; i < w.qp_ramp.size(); ++i) {
    if (!(w.qp_ramp[i - 1].at < w.qp_ramp[i].at)) {
      err("workload.qp_ramp times must be strictly increasing (entry " + std::to_string(i) + ")");
    }
  }
  if (w.duration && w.duration->ticks <= 0) err("workload.duration must be positive");
  if (w.start.ticks < 0) err("workload.start must be non-negative");
  if (w.kind == WorkloadKind::kQueueFlood && w.batch == 0) err("workload.batch must be positive");
  if (w.kind == WorkloadKind::kReadLat && w.working_set_pages == 0) {
    err("workload.working_set_pages must be positive");
  }
  return errors;
}

}  // namespace rnicsim
