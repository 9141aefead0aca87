#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace rnicsim {

// Virtual time. One tick is one microsecond of simulated time.
struct SimTime {
  std::int64_t ticks = 0;

  static constexpr std::int64_t kTicksPerMs = 1000;
  static constexpr std::int64_t kTicksPerSecond = 1000000;

  static constexpr SimTime from_ticks(std::int64_t t) { return SimTime{t}; }
  static constexpr SimTime from_us(std::int64_t us) { return SimTime{us}; }
  static constexpr SimTime from_ms(std::int64_t ms) {
    return SimTime{ms * kTicksPerMs};
  }
  static SimTime from_seconds(double s) {
    return SimTime{static_cast<std::int64_t>(
        std::llround(s * static_cast<double>(kTicksPerSecond)))};
  }

  constexpr double seconds() const {
    return static_cast<double>(ticks) / static_cast<double>(kTicksPerSecond);
  }
  constexpr double us() const { return static_cast<double>(ticks); }

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime operator+(SimTime o) const { return {ticks + o.ticks}; }
  constexpr SimTime operator-(SimTime o) const { return {ticks - o.ticks}; }
  constexpr SimTime& operator+=(SimTime o) {
    ticks += o.ticks;
    return *this;
  }
};

}  // namespace rnicsim
