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

// Exact solvers for structured inputs: few distinct (rescue length,
// extinction class) combinations, and star trees, where the problem is a
// chain of 0/1 knapsacks.

#ifndef TPD_DP_STRUCTURED_H_
#define TPD_DP_STRUCTURED_H_

#include <cstdint>
#include <span>
#include <vector>

#include "tpd/dp_hours.h"
#include "tpd/model.h"
#include "tpd/outcome.h"

namespace tpd {

// Budget: how many taxa of each (rescue length, extinction class) bucket may
// still be rescued, capped by the bucket sizes. The root keeps the count
// matrices whose per-class hour totals respect the capacities.
// Collaborative mode.
SolveOutcome SolveTimePdXp(const Instance& instance, const StateLimits& limits = {});

enum class KnapsackMode {
  kByCapacity,  // table[c]: max profit with weight <= c
  kByProfit,    // table[p]: min weight with profit >= p
  kByLoss,      // table[l]: max weight of a subset with profit <= l
};

struct KnapsackItem {
  int64_t weight = 0;
  int64_t profit = 0;
};

class KnapsackTable {
 public:
  KnapsackTable(std::span<const KnapsackItem> items, KnapsackMode mode,
                int64_t bound);

  KnapsackMode mode() const { return mode_; }
  int64_t bound() const { return bound_; }
  // Unreachable entries of kByProfit hold kUnreachable.
  const std::vector<int64_t>& table() const { return rows_.back(); }
  int64_t operator[](int64_t k) const { return rows_.back()[k]; }

  // Items of a subset attaining table()[k].
  std::vector<int> Select(int64_t k) const;

  // Max profit with weight <= c for c = 0..capacity, with the item subsets
  // recoverable through SelectForCapacity.
  std::vector<int64_t> ProfitByCapacity(int64_t capacity) const;
  std::vector<int> SelectForCapacity(int64_t capacity) const;

  static constexpr int64_t kUnreachable = INT64_MAX / 4;

 private:
  std::vector<KnapsackItem> items_;
  KnapsackMode mode_;
  int64_t bound_;
  int64_t total_weight_ = 0;
  int64_t total_profit_ = 0;
  std::vector<std::vector<int64_t>> rows_;  // rows_[i]: first i items
};

// Throws kBoundTooLarge when `bound` exceeds `max_bound`.
KnapsackTable KnapsackKernel(std::span<const KnapsackItem> items,
                             KnapsackMode mode, int64_t bound,
                             int64_t max_bound = 10'000'000);

// out[c] = max over a + b = c of x[a] + y[b] for c <= cap; entries below
// zero mean unreachable and stay so.
std::vector<int64_t> MaxPlusConvolve(std::span<const int64_t> x,
                                     std::span<const int64_t> y, int64_t cap);

// Star trees: per extinction class a knapsack with weight = rescue length
// and profit = edge weight, chained through the class capacities.
// Throws kNotAStar, kUnsupportedMode.
SolveOutcome SolveStar(const Instance& instance,
                       KnapsackMode mode = KnapsackMode::kByCapacity);

}  // namespace tpd

#endif  // TPD_DP_STRUCTURED_H_
