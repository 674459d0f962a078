#include <benchmark/benchmark.h>

#include "qosp/counting.hpp"
#include "qosp/philox.hpp"

using namespace qosp;

static void PhiloxBlock(benchmark::State& state) {
  std::uint64_t slot = 0;
  for (auto _ : state) {
    auto words = Philox4x64::block({slot++, 0, 0, 0}, {42, 0});
    benchmark::DoNotOptimize(words);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(PhiloxBlock);

static void SimulateSlots(benchmark::State& state) {
  const SlotProbabilities probs{0.05, 1.43e-3, 3.8e-4};
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto shards = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    auto rec = simulate_slots(probs, n, 7, 0, shards);
    benchmark::DoNotOptimize(rec);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(SimulateSlots)->Args({1 << 20, 1})->Args({1 << 20, 2})->Args({1 << 24, 0});

static void SimulateWithHistogram(benchmark::State& state) {
  const SlotProbabilities probs{0.05, 1.43e-3, 3.8e-4};
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto sim = simulate_with_histogram(probs, n, 7);
    benchmark::DoNotOptimize(sim);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(SimulateWithHistogram)->Arg(1 << 20);

BENCHMARK_MAIN();
