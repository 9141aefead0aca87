#include "rnicsim/rnic/lru_cache.hpp"

#include "rnicsim/engine/check.hpp"

namespace rnicsim {

LruCache::LruCache(std::size_t capacity_entries) : capacity_(capacity_entries) {
  RNICSIM_CHECK(capacity_entries > 0, "cache capacity must be positive");
  nodes_.reserve(capacity_entries);
  index_.reserve(capacity_entries * 2);
}

void LruCache::unlink(std::uint32_t n) {
  Node& node = nodes_[n];
  if (node.prev != kNil) {
    nodes_[node.prev].next = node.next;
  } else {
    head_ = node.next;
  }
  if (node.next != kNil) {
    nodes_[node.next].prev = node.prev;
  } else {
    tail_ = node.prev;
  }
  node.prev = node.next = kNil;
}

void LruCache::push_front(std::uint32_t n) {
  Node& node = nodes_[n];
  node.prev = kNil;
  node.next = head_;
  if (head_ != kNil) nodes_[head_].prev = n;
  head_ = n;
  if (tail_ == kNil) tail_ = n;
}

bool LruCache::lookup(std::uint64_t key) {
  if (auto it = index_.find(key); it != index_.end()) {
    ++hits_;
    if (it->second != head_) {
      unlink(it->second);
      push_front(it->second);
    }
    return true;
  }
  ++misses_;
  std::uint32_t slot;
  if (index_.size() >= capacity_) {
    slot = tail_;
    unlink(slot);
    index_.erase(nodes_[slot].key);
    ++evictions_;
  } else if (!free_.empty()) {
    slot = free_.back();
    free_.pop_back();
  } else {
    slot = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
  }
  nodes_[slot].key = key;
  push_front(slot);
  index_.emplace(key, slot);
  return false;
}

bool LruCache::lookup_repeated(std::uint64_t key, std::uint64_t count) {
  if (count == 0) return contains(key);
  const bool first = lookup(key);
  hits_ += count - 1;
  return first;
}

void LruCache::erase(std::uint64_t key) {
  auto it = index_.find(key);
  if (it == index_.end()) return;
  unlink(it->second);
  free_.push_back(it->second);
  index_.erase(it);
}

std::vector<std::uint64_t> LruCache::keys_mru_order() const {
  std::vector<std::uint64_t> out;
  out.reserve(index_.size());
  for (std::uint32_t n = head_; n != kNil; n = nodes_[n].next) {
    out.push_back(nodes_[n].key);
  }
  return out;
}

}  // namespace rnicsim
