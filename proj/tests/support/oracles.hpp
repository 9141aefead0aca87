#pragma once

// Brute-force reference models. Each one is written from the textbook
// definition and shares no code with the library it is checked against.

#include <algorithm>
#include <cstdint>
#include <list>
#include <random>
#include <string>
#include <vector>

#include "rnicsim/defense/percentile.hpp"
#include "rnicsim/rnic/lru_cache.hpp"
#include "rnicsim/rnic/pfc_buffer.hpp"

namespace rnicsim::oracle {

// Linear-scan LRU: a list ordered most to least recently used.
class BruteLru {
 public:
  explicit BruteLru(std::size_t capacity) : capacity_(capacity) {}

  bool lookup(std::uint64_t key) {
    auto it = std::find(order_.begin(), order_.end(), key);
    if (it != order_.end()) {
      order_.erase(it);
      order_.push_front(key);
      return true;
    }
    order_.push_front(key);
    if (order_.size() > capacity_) order_.pop_back();
    return false;
  }

  std::vector<std::uint64_t> keys() const { return {order_.begin(), order_.end()}; }

 private:
  std::size_t capacity_;
  std::list<std::uint64_t> order_;
};

// Tick-by-tick occupancy recurrence with XOFF/XON hysteresis; counts upward
// XOFF crossings while not paused.
inline std::uint64_t pfc_replay(const PfcConfig& c, const std::vector<double>& arrivals,
                                double drain) {
  double occ = 0.0;
  bool paused = false;
  std::uint64_t pauses = 0;
  for (double a : arrivals) {
    occ = std::min(occ + a, c.capacity_bytes);
    if (!paused && occ >= c.xoff_bytes) {
      paused = true;
      ++pauses;
    }
    occ = occ > drain ? occ - drain : 0.0;
    if (paused && occ < c.xon_bytes) paused = false;
  }
  return pauses;
}

// Nearest rank for an integer percentile: the smallest sample value v such
// that at least p% of the sample is <= v.
inline double nearest_rank(const std::vector<double>& values, int p) {
  if (values.empty()) return 0.0;
  const std::size_t n = values.size();
  double best = 0.0;
  bool found = false;
  for (double v : values) {
    const auto at_or_below =
        static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [v](double x) { return x <= v; }));
    if (at_or_below * 100 >= static_cast<std::size_t>(p) * n && (!found || v < best)) {
      best = v;
      found = true;
    }
  }
  return best;
}

struct SuiteResult {
  int cases = 0;
  int mismatches = 0;
  std::string first_failure;

  bool ok() const { return mismatches == 0; }
};

// LRU equivalence over random traces. Key ranges vary per trace so some
// traces mostly hit and others thrash.
inline SuiteResult lru_suite(int traces, int accesses, std::uint64_t seed) {
  SuiteResult r;
  std::mt19937_64 gen(seed);
  for (int t = 0; t < traces; ++t) {
    const std::size_t capacity = 1 + gen() % 64;
    const std::uint64_t key_range = 1 + gen() % (4 * capacity);
    LruCache cache(capacity);
    BruteLru ref(capacity);
    std::uint64_t hits = 0;
    bool diverged = false;
    for (int i = 0; i < accesses && !diverged; ++i) {
      const std::uint64_t key = gen() % key_range;
      const bool got = cache.lookup(key);
      if (got != ref.lookup(key)) diverged = true;
      hits += got ? 1 : 0;
    }
    if (!diverged && (cache.keys_mru_order() != ref.keys() || cache.hits() != hits ||
                      cache.lookups() != static_cast<std::uint64_t>(accesses))) {
      diverged = true;
    }
    ++r.cases;
    if (diverged) {
      if (r.mismatches++ == 0) r.first_failure = "lru trace " + std::to_string(t);
    }
  }
  return r;
}

// PFC pause counts over random arrival profiles: bursty on/off sources
// around the drain rate.
inline SuiteResult pfc_suite(int profiles, int ticks, std::uint64_t seed) {
  SuiteResult r;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int p = 0; p < profiles; ++p) {
    PfcConfig c;
    c.capacity_bytes = 20000 + 80000 * u(gen);
    c.xoff_bytes = c.capacity_bytes * (0.5 + 0.4 * u(gen));
    c.xon_bytes = c.xoff_bytes * (0.1 + 0.8 * u(gen));
    const double drain = 500 + 2000 * u(gen);
    const double on_prob = u(gen);
    std::vector<double> arrivals(static_cast<std::size_t>(ticks));
    for (auto& a : arrivals) a = u(gen) < on_prob ? drain * 3.0 * u(gen) : 0.0;

    PfcBuffer buf(c);
    for (double a : arrivals) buf.tick(a, drain);
    ++r.cases;
    if (buf.pause_frames_emitted() != pfc_replay(c, arrivals, drain)) {
      if (r.mismatches++ == 0) r.first_failure = "pfc profile " + std::to_string(p);
    }
  }
  return r;
}

// Nearest-rank percentiles over random windows, including heavy ties.
inline SuiteResult percentile_suite(int windows, std::uint64_t seed) {
  SuiteResult r;
  std::mt19937_64 gen(seed);
  for (int w = 0; w < windows; ++w) {
    const std::size_t n = 1 + gen() % 400;
    const std::uint64_t distinct = 1 + gen() % 1000;
    std::vector<double> values(n);
    for (auto& v : values) v = static_cast<double>(gen() % distinct) * 0.25;
    for (int p : {1, 10, 25, 50, 90, 99, 100}) {
      ++r.cases;
      if (nearest_rank_percentile(values, p) != nearest_rank(values, p)) {
        if (r.mismatches++ == 0) {
          r.first_failure = "window " + std::to_string(w) + " p" + std::to_string(p);
        }
      }
    }
  }
  return r;
}

}  // namespace rnicsim::oracle
