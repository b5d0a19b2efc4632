#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "bids/influence.hpp"
#include "bids/normalize.hpp"
#include "bids/rng.hpp"
#include "bids/selectors.hpp"

namespace {

bids::AttributionMatrix gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  bids::Xoshiro256 rng(seed);
  std::vector<double> v(rows * cols);
  for (double& x : v) x = rng.normal();
  return bids::AttributionMatrix(rows, cols, std::move(v));
}

void BM_SelectBids(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto m = bids::normalize_columns(gaussian(rows, 350, 1));
  const std::size_t budget = rows / 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bids::select_bids(m, budget));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(budget));
}
BENCHMARK(BM_SelectBids)->Arg(5000)->Arg(20000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_InstanceMax(benchmark::State& state) {
  const auto m = gaussian(static_cast<std::size_t>(state.range(0)), 350, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bids::select_instance_max(m, m.n_train() / 10));
  }
}
BENCHMARK(BM_InstanceMax)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_NormalizeColumns(benchmark::State& state) {
  const auto m = gaussian(static_cast<std::size_t>(state.range(0)), 350, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bids::normalize_columns(m));
  }
  state.SetBytesProcessed(state.iterations() *
                          static_cast<std::int64_t>(m.values().size() * sizeof(double)));
}
BENCHMARK(BM_NormalizeColumns)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_AdamInfluence(benchmark::State& state) {
  bids::GradientFeatureSet f;
  const auto dim = static_cast<std::size_t>(state.range(0));
  for (std::uint64_t t = 0; t < 4; ++t) {
    f.train_features.push_back(gaussian(2000, dim, 10 + t));
    f.val_features.push_back(gaussian(200, dim, 20 + t));
    f.learning_rates.push_back(1e-4);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(bids::adam_influence(f));
  }
}
BENCHMARK(BM_AdamInfluence)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
