#pragma once

#include <stdexcept>
#include <string>

namespace rnicsim {

class RnicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The QP table is full; against an attacker this is the observable success
// condition of a queue-flooding attack.
class QpCapacityExhausted : public RnicError {
 public:
  using RnicError::RnicError;
};

// QP creation refused because the defense blocked the owner.
class QpCreationBlocked : public RnicError {
 public:
  using RnicError::RnicError;
};

class IllegalVerbForMode : public RnicError {
 public:
  using RnicError::RnicError;
};

class QueueFull : public RnicError {
 public:
  using RnicError::RnicError;
};

class InvalidWorkRequest : public RnicError {
 public:
  using RnicError::RnicError;
};

}  // namespace rnicsim
