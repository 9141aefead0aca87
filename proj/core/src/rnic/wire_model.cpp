#include "rnicsim/rnic/wire_model.hpp"

#include <string>

#include "rnicsim/rnic/errors.hpp"

namespace rnicsim {

WireOverheadTable WireOverheadTable::from_amplification(
    double ar_send, double ar_write, double ar_read, double ar_atomic,
    double payload_bytes, double rc_ack_charge_bytes) {
  WireOverheadTable t;
  auto set = [&](VerbKind v, double ar, bool uc_legal) {
    const double rc = (ar - 1.0) * payload_bytes;
    t.at(v, TransportMode::kRC) = rc;
    t.at(v, TransportMode::kUC) = uc_legal ? rc - rc_ack_charge_bytes : 0.0;
  };
  set(VerbKind::kSend, ar_send, true);
  set(VerbKind::kWrite, ar_write, true);
  set(VerbKind::kRead, ar_read, false);
  set(VerbKind::kAtomic, ar_atomic, false);
  return t;
}

WireOverheadTable WireOverheadTable::defaults(double rc_ack_charge_bytes) {
  return from_amplification(kReferenceArSend, kReferenceArWrite,
                            kReferenceArRead, kReferenceArAtomic,
                            kReferenceAmplificationPayload, rc_ack_charge_bytes);
}

WireModel::WireModel(WireOverheadTable table) : table_(table) {}

double WireModel::wire_bytes(VerbKind verb, TransportMode mode,
                             std::uint64_t payload_bytes) const {
  if (!verb_legal(verb, mode)) {
    throw IllegalVerbForMode(std::string(to_string(verb)) + " is not legal on a " +
                             std::string(to_string(mode)) + " QP");
  }
  if (verb == VerbKind::kRecv) return 0.0;
  return static_cast<double>(payload_bytes) + table_.at(verb, mode);
}

}  // namespace rnicsim
