#pragma once

#include <array>
#include <cstdint>

#include "rnicsim/rnic/types.hpp"

namespace rnicsim {

// Average wire bytes each verb adds beyond its payload, per transport mode.
// Headers, control traffic and flow-control events are folded into one
// constant, so a verb of payload L costs L + overhead bytes on the wire.
struct WireOverheadTable {
  // [verb][mode]; RECV puts nothing on the wire and illegal combinations are
  // never consulted.
  std::array<std::array<double, 2>, 5> bytes{};

  double at(VerbKind v, TransportMode m) const {
    return bytes[index_of(v)][index_of(m)];
  }
  double& at(VerbKind v, TransportMode m) { return bytes[index_of(v)][index_of(m)]; }

  // Defaults reproduce the measured RC byte amplification at an 8-byte
  // payload: overhead = (AR - 1) * 8. UC drops the per-verb RC ACK charge.
  static WireOverheadTable defaults(double rc_ack_charge_bytes = 8.0);

  // Builds a table whose RC entries give amplification `ar` at `payload`
  // bytes, with UC entries `rc_ack_charge_bytes` lower.
  static WireOverheadTable from_amplification(double ar_send, double ar_write,
                                              double ar_read, double ar_atomic,
                                              double payload_bytes,
                                              double rc_ack_charge_bytes);

  bool operator==(const WireOverheadTable&) const = default;
};

inline constexpr double kReferenceAmplificationPayload = 8.0;
inline constexpr double kReferenceArSend = 18.26;
inline constexpr double kReferenceArWrite = 22.01;
inline constexpr double kReferenceArRead = 20.1;
inline constexpr double kReferenceArAtomic = 23.1;

class WireModel {
 public:
  explicit WireModel(WireOverheadTable table = WireOverheadTable::defaults());

  // payload + per-verb overhead. RECV is 0. Throws IllegalVerbForMode.
  double wire_bytes(VerbKind verb, TransportMode mode,
                    std::uint64_t payload_bytes) const;

  double overhead(VerbKind verb, TransportMode mode) const {
    return table_.at(verb, mode);
  }
  const WireOverheadTable& table() const { return table_; }

 private:
  WireOverheadTable table_;
};

}  // namespace rnicsim
