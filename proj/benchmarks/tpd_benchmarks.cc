// Copyright 2026 The tpd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Micro-benchmarks of the solver kernels.

#include <cstdint>
#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "fixtures.h"
#include "tpd/dp_structured.h"
#include "tpd/fpt_d.h"
#include "tpd/fpt_dbar.h"
#include "tpd/model.h"
#include "tpd/oracle.h"
#include "tpd/rng.h"

namespace tpd {
namespace {

using testing::RandomInstance;
using testing::RandomShape;
using testing::StarInstance;

constexpr int kColorings = 64;

// One colored-table trial per iteration, cycling through random colorings.
void BM_ColoredTrial(benchmark::State& state) {
  const int colors = static_cast<int>(state.range(0));
  const int n = 40;
  std::vector<int64_t> weights(n, 1), ell(n), ex(n);
  for (int i = 0; i < n; ++i) {
    ell[i] = 1 + i % 3;
    ex[i] = 10 + 10 * (i % 4);
  }
  const Instance instance = StarInstance(weights, ell, ex, {{0, 40}, {5, 40}}, colors);
  const DerivedIndex index = BuildDerivedIndex(instance);
  std::mt19937_64 rng(colors);
  std::vector<DColoring> pool;
  for (int k = 0; k < kColorings; ++k) {
    std::vector<int> f(n);
    for (int& c : f) c = static_cast<int>(UniformBelow(rng, colors));
    pool.push_back(ColorEdgesFromHash(instance.tree(), colors, f));
  }
  std::vector<TaxonId> candidates(n);
  for (int i = 0; i < n; ++i) candidates[i] = i;
  int r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        SolveColoredTimePd(instance, index, pool[r++ % kColorings], candidates));
  }
  state.counters["table"] = static_cast<double>(uint64_t{1} << colors);
}
BENCHMARK(BM_ColoredTrial)->DenseRange(6, 14, 2);

void BM_CoverProduct(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto method = static_cast<CoverMethod>(state.range(1));
  std::mt19937_64 rng(k);
  std::vector<uint8_t> f(size_t{1} << k), g(size_t{1} << k);
  // Sparse tables: the early exit of the direct method rarely fires.
  for (auto& v : f) v = UniformBelow(rng, 64) == 0;
  for (auto& v : g) v = UniformBelow(rng, 64) == 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(BooleanCoverCombine(f, g, k, method));
  }
}
BENCHMARK(BM_CoverProduct)
    ->ArgsProduct({{8, 12, 16, 18, 20},
                   {static_cast<int>(CoverMethod::kDirect),
                    static_cast<int>(CoverMethod::kRanked)}});

// One loss-bounded trial on a fixed binary instance.
void BM_DbarTrial(benchmark::State& state) {
  const int dbar = static_cast<int>(state.range(0));
  Instance instance;
  for (uint64_t seed = 0;; ++seed) {
    instance = RandomInstance(
        RandomShape{.min_taxa = 8, .max_taxa = 8, .max_ex = 12, .binary_only = true}, seed);
    if (instance.tree().total_weight() > dbar) break;
  }
  instance = instance.WithTarget(instance.tree().total_weight() - dbar);
  const DerivedIndex index = BuildDerivedIndex(instance);
  std::mt19937_64 rng(dbar);
  std::vector<DbarColoring> pool;
  for (int k = 0; k < kColorings; ++k) {
    std::vector<int> f(DbarHashDomain(instance.tree(), dbar));
    for (int& c : f) c = static_cast<int>(UniformBelow(rng, 2 * dbar));
    pool.push_back(ColorEdgesForDbar(instance.tree(), dbar, f));
  }
  int r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunAlgorithmDbar(instance, index, pool[r++ % kColorings]));
  }
}
BENCHMARK(BM_DbarTrial)->DenseRange(1, 5);

void BM_Knapsack(benchmark::State& state) {
  const int64_t bound = state.range(0);
  const auto mode = static_cast<KnapsackMode>(state.range(1));
  std::mt19937_64 rng(bound);
  std::vector<KnapsackItem> items(64);
  int64_t profit = 0;
  for (KnapsackItem& it : items) {
    it.weight = 1 + static_cast<int64_t>(UniformBelow(rng, 50));
    it.profit = 1 + static_cast<int64_t>(UniformBelow(rng, 50));
    profit += it.profit;
  }
  const int64_t limit = mode == KnapsackMode::kByCapacity ? bound : std::min(bound, profit);
  for (auto _ : state) {
    benchmark::DoNotOptimize(KnapsackKernel(items, mode, limit));
  }
}
BENCHMARK(BM_Knapsack)
    ->ArgsProduct({{256, 1024},
                   {static_cast<int>(KnapsackMode::kByCapacity),
                    static_cast<int>(KnapsackMode::kByProfit),
                    static_cast<int>(KnapsackMode::kByLoss)}});

void BM_BruteForce(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance instance =
      RandomInstance(RandomShape{.min_taxa = n, .max_taxa = n, .max_ex = 16}, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BruteForceTimePd(instance));
  }
}
BENCHMARK(BM_BruteForce)->DenseRange(8, 16, 4);

}  // namespace
}  // namespace tpd

BENCHMARK_MAIN();
