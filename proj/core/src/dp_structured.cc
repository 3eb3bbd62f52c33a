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

#include "tpd/dp_structured.h"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "budget_dp.h"
#include "tpd/error.h"
#include "tpd/feasibility.h"

namespace tpd {
namespace {

using internal::BoxSpace;
using internal::BudgetTreeDp;
using internal::kNoSet;

constexpr int64_t kUnreachableProfit = -1;

}  // namespace

// ---------------------------------------------------------------------------
// Knapsack kernels

KnapsackTable::KnapsackTable(std::span<const KnapsackItem> items,
                             KnapsackMode mode, int64_t bound)
    : items_(items.begin(), items.end()), mode_(mode), bound_(bound) {
  for (const KnapsackItem& it : items_) {
    if (it.weight < 0 || it.profit < 0) {
      throw Error(ErrorCode::kBadParams, "knapsack items need non-negative values");
    }
    total_weight_ += it.weight;
    total_profit_ += it.profit;
  }
  const size_t width = static_cast<size_t>(bound) + 1;
  rows_.reserve(items_.size() + 1);
  if (mode == KnapsackMode::kByProfit) {
    rows_.emplace_back(width, kUnreachable);
    rows_[0][0] = 0;
  } else {
    rows_.emplace_back(width, 0);
  }
  for (const KnapsackItem& it : items_) {
    const std::vector<int64_t>& prev = rows_.back();
    std::vector<int64_t> next = prev;
    for (int64_t k = 0; k <= bound; ++k) {
      switch (mode) {
        case KnapsackMode::kByCapacity:
          if (k >= it.weight) next[k] = std::max(next[k], prev[k - it.weight] + it.profit);
          break;
        case KnapsackMode::kByProfit: {
          const int64_t before = prev[std::max<int64_t>(0, k - it.profit)];
          if (before < kUnreachable) next[k] = std::min(next[k], before + it.weight);
          break;
        }
        case KnapsackMode::kByLoss:
          if (k >= it.profit) next[k] = std::max(next[k], prev[k - it.profit] + it.weight);
          break;
      }
    }
    rows_.push_back(std::move(next));
  }
}

std::vector<int> KnapsackTable::Select(int64_t k) const {
  if (k < 0 || k > bound_) throw Error(ErrorCode::kBadParams, "index outside the table");
  if (mode_ == KnapsackMode::kByProfit && rows_.back()[k] >= kUnreachable) {
    throw Error(ErrorCode::kBadParams, "profit level unreachable");
  }
  std::vector<int> out;
  for (size_t i = items_.size(); i > 0; --i) {
    if (rows_[i][k] == rows_[i - 1][k]) continue;
    out.push_back(static_cast<int>(i - 1));
    const KnapsackItem& it = items_[i - 1];
    switch (mode_) {
      case KnapsackMode::kByCapacity: k -= it.weight; break;
      case KnapsackMode::kByProfit: k = std::max<int64_t>(0, k - it.profit); break;
      case KnapsackMode::kByLoss: k -= it.profit; break;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<int64_t> KnapsackTable::ProfitByCapacity(int64_t capacity) const {
  std::vector<int64_t> out(static_cast<size_t>(capacity) + 1, 0);
  const std::vector<int64_t>& t = rows_.back();
  for (int64_t c = 0; c <= capacity; ++c) {
    switch (mode_) {
      case KnapsackMode::kByCapacity:
        if (capacity > bound_) throw Error(ErrorCode::kBadParams, "capacity beyond bound");
        out[c] = t[c];
        break;
      case KnapsackMode::kByProfit:
        for (int64_t p = bound_; p >= 0; --p) {
          if (t[p] <= c) {
            out[c] = p;
            break;
          }
        }
        break;
      case KnapsackMode::kByLoss:
        for (int64_t l = 0; l <= bound_; ++l) {
          if (total_weight_ - t[l] <= c) {
            out[c] = total_profit_ - l;
            break;
          }
        }
        break;
    }
  }
  return out;
}

std::vector<int> KnapsackTable::SelectForCapacity(int64_t capacity) const {
  const std::vector<int64_t>& t = rows_.back();
  switch (mode_) {
    case KnapsackMode::kByCapacity:
      return Select(capacity);
    case KnapsackMode::kByProfit:
      for (int64_t p = bound_; p >= 0; --p) {
        if (t[p] <= capacity) return Select(p);
      }
      break;
    case KnapsackMode::kByLoss:
      for (int64_t l = 0; l <= bound_; ++l) {
        if (total_weight_ - t[l] > capacity) continue;
        const std::vector<int> lost = Select(l);
        std::vector<int> kept;
        for (int i = 0; i < static_cast<int>(items_.size()); ++i) {
          if (!std::binary_search(lost.begin(), lost.end(), i)) kept.push_back(i);
        }
        return kept;
      }
      break;
  }
  throw Error(ErrorCode::kBadParams, "no subset fits the capacity");
}

KnapsackTable KnapsackKernel(std::span<const KnapsackItem> items,
                             KnapsackMode mode, int64_t bound, int64_t max_bound) {
  if (bound < 0) throw Error(ErrorCode::kBadParams, "negative knapsack bound");
  if (bound > max_bound) {
    throw Error(ErrorCode::kBoundTooLarge,
                "knapsack bound " + std::to_string(bound) + " exceeds the limit");
  }
  return KnapsackTable(items, mode, bound);
}

std::vector<int64_t> MaxPlusConvolve(std::span<const int64_t> x,
                                     std::span<const int64_t> y, int64_t cap) {
  std::vector<int64_t> out(static_cast<size_t>(cap) + 1, kUnreachableProfit);
  for (int64_t a = 0; a < static_cast<int64_t>(x.size()) && a <= cap; ++a) {
    if (x[a] < 0) continue;
    for (int64_t b = 0; b < static_cast<int64_t>(y.size()) && a + b <= cap; ++b) {
      if (y[b] < 0) continue;
      out[a + b] = std::max(out[a + b], x[a] + y[b]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Star trees

SolveOutcome SolveStar(const Instance& instance, KnapsackMode mode) {
  const std::string name = "star";
  if (instance.mode() != Mode::kCollaborative) {
    throw Error(ErrorCode::kUnsupportedMode, name + " handles collaborative instances");
  }
  const PhyloTree& tree = instance.tree();
  if (!tree.IsStar()) throw Error(ErrorCode::kNotAStar, "the root has a non-leaf child");
  const DerivedIndex index = BuildDerivedIndex(instance);
  if (auto trivial = TrivialOutcome(instance, index, name)) return *trivial;

  const int v = index.num_classes;
  int64_t total_length = index.prefix_length.back();
  std::vector<int64_t> cap(v);  // capacities beyond the total length are moot
  for (int j = 0; j < v; ++j) cap[j] = std::min(index.capacity[j], total_length);

  std::vector<KnapsackTable> kernels;
  std::vector<std::vector<TaxonId>> members(v);
  std::vector<std::vector<int64_t>> per_class(v);
  for (int j = 0; j < v; ++j) {
    std::vector<KnapsackItem> items;
    int64_t profit = 0;
    for (TaxonId x = index.class_begin(j); x < index.class_end[j]; ++x) {
      members[j].push_back(x);
      const int64_t w = tree.weight(instance.taxon_vertex(x));
      items.push_back({index.rescue_length[x], w});
      profit += w;
    }
    const int64_t bound = mode == KnapsackMode::kByCapacity ? cap[j] : profit;
    kernels.push_back(KnapsackKernel(items, mode, bound));
    per_class[j] = kernels.back().ProfitByCapacity(cap[j]);
  }

  // stage[j][c]: best diversity of classes <= j using at most c hours, with
  // every earlier prefix within its own capacity.
  std::vector<std::vector<int64_t>> stage(v);
  std::vector<std::vector<int64_t>> split(v);
  stage[0] = per_class[0];
  split[0].assign(stage[0].size(), 0);
  for (int j = 1; j < v; ++j) {
    stage[j].assign(cap[j] + 1, kUnreachableProfit);
    split[j].assign(cap[j] + 1, 0);
    for (int64_t c = 0; c <= cap[j]; ++c) {
      for (int64_t a = 0; a <= std::min(c, cap[j - 1]); ++a) {
        if (stage[j - 1][a] < 0) continue;
        const int64_t value = stage[j - 1][a] + per_class[j][c - a];
        if (value > stage[j][c]) {
          stage[j][c] = value;
          split[j][c] = a;
        }
      }
    }
  }
  const int64_t best = stage[v - 1][cap[v - 1]];
  SolveOutcome out;
  if (best >= index.target) {
    std::vector<TaxonId> saved;
    int64_t c = cap[v - 1];
    for (int j = v - 1; j >= 0; --j) {
      const int64_t a = j > 0 ? split[j][c] : 0;
      for (int item : kernels[j].SelectForCapacity(c - a)) {
        saved.push_back(members[j][item]);
      }
      c = a;
    }
    out = MakeYes(instance, index, TaxaSet(std::move(saved)), std::nullopt, name);
  } else {
    out = MakeNo(name);
  }
  out.optimum = best;
  return out;
}

// ---------------------------------------------------------------------------
// Bucket counts

SolveOutcome SolveTimePdXp(const Instance& instance, const StateLimits& limits) {
  const std::string name = "xp-counts";
  if (instance.mode() != Mode::kCollaborative) {
    throw Error(ErrorCode::kUnsupportedMode, name + " handles collaborative instances");
  }
  const DerivedIndex index = BuildDerivedIndex(instance);
  if (auto trivial = TrivialOutcome(instance, index, name)) return *trivial;

  // Non-empty (rescue length, class) buckets.
  std::map<std::pair<int64_t, int>, int> bucket_id;
  std::vector<int> bucket_of(index.num_taxa);
  std::vector<int64_t> caps, bucket_length;
  std::vector<int> bucket_class;
  for (TaxonId x = 0; x < index.num_taxa; ++x) {
    const auto key = std::make_pair(index.rescue_length[x], index.class_of[x]);
    auto [it, fresh] = bucket_id.emplace(key, static_cast<int>(caps.size()));
    if (fresh) {
      caps.push_back(0);
      bucket_length.push_back(key.first);
      bucket_class.push_back(key.second);
    }
    bucket_of[x] = it->second;
    ++caps[it->second];
  }
  const BoxSpace space(caps);
  if (space.size() > limits.max_states) {
    throw Error(ErrorCode::kStateSpaceTooLarge, name + ": too many count matrices");
  }
  std::vector<int64_t> digits;
  std::vector<std::vector<uint8_t>> tables(caps.size());
  for (size_t b = 0; b < caps.size(); ++b) {
    tables[b].resize(space.size());
    for (uint64_t a = 0; a < space.size(); ++a) {
      space.Decode(a, &digits);
      tables[b][a] = digits[b] >= 1;
    }
  }
  BudgetTreeDp<BoxSpace> dp(
      instance, space,
      [&](TaxonId x) -> const std::vector<uint8_t>& { return tables[bucket_of[x]]; },
      limits);
  dp.Run();

  int64_t best = kNoSet;
  uint64_t best_a = 0;
  std::vector<int64_t> hours(index.num_classes);
  for (uint64_t a = 0; a < space.size(); ++a) {
    const int64_t value = dp.Value(a);
    if (value == kNoSet || value <= best) continue;
    space.Decode(a, &digits);
    std::fill(hours.begin(), hours.end(), 0);
    for (size_t b = 0; b < caps.size(); ++b) {
      hours[bucket_class[b]] += bucket_length[b] * digits[b];
    }
    bool ok = true;
    int64_t running = 0;
    for (int j = 0; j < index.num_classes && ok; ++j) {
      running += hours[j];
      ok = running <= index.capacity[j];
    }
    if (ok) {
      best = value;
      best_a = a;
    }
  }
  SolveOutcome out;
  if (best != kNoSet && best >= index.target) {
    std::vector<TaxonId> saved;
    for (const auto& [x, budget] : dp.Extract(best_a)) saved.push_back(x);
    out = MakeYes(instance, index, TaxaSet(std::move(saved)), std::nullopt, name);
  } else {
    out = MakeNo(name);
  }
  out.optimum = std::max<int64_t>(0, best);
  return out;
}

}  // namespace tpd
