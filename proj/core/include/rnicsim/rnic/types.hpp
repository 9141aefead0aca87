#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace rnicsim {

using ContainerId = std::uint32_t;
using QpId = std::uint32_t;

enum class TransportMode : std::uint8_t { kRC, kUC };

enum class VerbKind : std::uint8_t { kSend, kRecv, kWrite, kRead, kAtomic };

inline constexpr std::array<VerbKind, 5> kAllVerbs = {
    VerbKind::kSend, VerbKind::kRecv, VerbKind::kWrite, VerbKind::kRead,
    VerbKind::kAtomic};

enum class QpState : std::uint8_t { kActive, kPaced, kBlocked };

enum class CacheKind : std::uint8_t { kMtt, kIcm, kWqe };

std::string_view to_string(TransportMode mode);
std::string_view to_string(VerbKind verb);
std::string_view to_string(QpState state);
std::string_view to_string(CacheKind cache);

std::optional<TransportMode> parse_transport_mode(std::string_view s);
std::optional<VerbKind> parse_verb(std::string_view s);

// UC has no one-sided READ or ATOMIC.
constexpr bool verb_legal(VerbKind verb, TransportMode mode) {
  if (mode == TransportMode::kUC) {
    return verb != VerbKind::kRead && verb != VerbKind::kAtomic;
  }
  return true;
}

// One-sided verbs carry a remote address and go through MTT translation.
constexpr bool verb_addressed(VerbKind verb) {
  return verb == VerbKind::kWrite || verb == VerbKind::kRead ||
         verb == VerbKind::kAtomic;
}

// Verbs whose wire bytes land in this RNIC's RX ingress buffer. READ
// responses are self-clocked by the requester and RECV puts nothing on the
// wire.
constexpr bool verb_enters_rx_buffer(VerbKind verb) {
  return verb == VerbKind::kSend || verb == VerbKind::kWrite ||
         verb == VerbKind::kAtomic;
}

// Requests that occupy an RC send-window slot until acknowledged.
constexpr bool verb_acked(VerbKind verb) { return verb != VerbKind::kRecv; }

constexpr std::size_t index_of(VerbKind v) { return static_cast<std::size_t>(v); }
constexpr std::size_t index_of(TransportMode m) {
  return static_cast<std::size_t>(m);
}

// A single posted work request. remote_page is the page-granular remote
// virtual address and is present iff the verb is one-sided.
struct WorkRequest {
  VerbKind verb = VerbKind::kSend;
  std::uint64_t payload_bytes = 0;
  std::optional<std::uint64_t> remote_page;
  double posted_at_us = 0.0;
};

}  // namespace rnicsim
