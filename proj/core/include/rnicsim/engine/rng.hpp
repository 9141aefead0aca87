#pragma once

#include <cstdint>

namespace rnicsim {

// Counter-free splitmix64/xoshiro256** stream. Draws are defined purely by
// integer arithmetic so a (seed, stream_id) pair yields the same sequence on
// every platform and standard library.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);
  // Uniform double in [0, 1) with 53 bits of precision.
  double uniform01();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace rnicsim
