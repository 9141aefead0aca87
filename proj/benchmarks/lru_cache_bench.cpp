#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rnicsim/rnic/lru_cache.hpp"

namespace {

// Uniform random keys over `range` with the cache sized at 4096 entries,
// the default MTT size.
void BM_LruUniform(benchmark::State& state) {
  const auto range = static_cast<std::uint64_t>(state.range(0));
  std::mt19937_64 gen(1);
  std::vector<std::uint64_t> keys(1 << 16);
  for (auto& k : keys) k = gen() % range;
  rnicsim::LruCache cache(4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cache.lookup(keys[i++ & (keys.size() - 1)]));
  }
  state.SetItemsProcessed(state.iterations());
  state.counters["miss_rate"] =
      static_cast<double>(cache.misses()) / static_cast<double>(cache.lookups());
}
BENCHMARK(BM_LruUniform)->Arg(2048)->Arg(4790)->Arg(1 << 20);

// Sequential scan: every lookup misses and evicts.
void BM_LruScan(benchmark::State& state) {
  rnicsim::LruCache cache(4096);
  std::uint64_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(cache.lookup(k++));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LruScan);

}  // namespace
