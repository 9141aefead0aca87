#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace rnicsim {

// Fully associative LRU cache over 64-bit keys, used for the MTT, ICM and
// WQE caches. Only residency and counters are modelled; entries carry no
// payload.
class LruCache {
 public:
  explicit LruCache(std::size_t capacity_entries);

  // Touches `key`. Returns true on hit. A miss inserts the key as MRU and
  // evicts the LRU entry when full.
  bool lookup(std::uint64_t key);

  // `count` back-to-back lookups of the same key: the first one is a real
  // lookup, the rest are hits by construction. Returns the first result.
  bool lookup_repeated(std::uint64_t key, std::uint64_t count);

  bool contains(std::uint64_t key) const { return index_.count(key) != 0; }
  void erase(std::uint64_t key);

  std::size_t capacity() const { return capacity_; }
  std::size_t resident() const { return index_.size(); }

  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }
  std::uint64_t evictions() const { return evictions_; }
  std::uint64_t lookups() const { return hits_ + misses_; }

  // Keys from most to least recently used.
  std::vector<std::uint64_t> keys_mru_order() const;

 private:
  static constexpr std::uint32_t kNil = 0xffffffffU;

  struct Node {
    std::uint64_t key = 0;
    std::uint32_t prev = kNil;
    std::uint32_t next = kNil;
  };

  void unlink(std::uint32_t n);
  void push_front(std::uint32_t n);

  std::size_t capacity_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> free_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::uint32_t head_ = kNil;
  std::uint32_t tail_ = kNil;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
  std::uint64_t evictions_ = 0;
};

}  // namespace rnicsim
