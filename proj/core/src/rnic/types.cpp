#include "rnicsim/rnic/types.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace rnicsim {

std::string_view to_string(TransportMode mode) {
  return mode == TransportMode::kRC ? "RC" : "UC";
}

std::string_view to_string(VerbKind verb) {
  switch (verb) {
    case VerbKind::kSend:
      return "SEND";
    case VerbKind::kRecv:
      return "RECV";
    case VerbKind::kWrite:
      return "WRITE";
    case VerbKind::kRead:
      return "READ";
    case VerbKind::kAtomic:
      return "ATOMIC";
  }
  return "?";
}

std::string_view to_string(QpState state) {
  switch (state) {
    case QpState::kActive:
      return "active";
    case QpState::kPaced:
      return "paced";
    case QpState::kBlocked:
      return "blocked";
  }
  return "?";
}

std::string_view to_string(CacheKind cache) {
  switch (cache) {
    case CacheKind::kMtt:
      return "mtt";
    case CacheKind::kIcm:
      return "icm";
    case CacheKind::kWqe:
      return "wqe";
  }
  return "?";
}

namespace {
std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}
}  // namespace

std::optional<TransportMode> parse_transport_mode(std::string_view s) {
  const auto u = upper(s);
  if (u == "RC") return TransportMode::kRC;
  if (u == "UC") return TransportMode::kUC;
  return std::nullopt;
}

std::optional<VerbKind> parse_verb(std::string_view s) {
  const auto u = upper(s);
  for (VerbKind v : kAllVerbs) {
    if (u == to_string(v)) return v;
  }
  return std::nullopt;
}

}  // namespace rnicsim
