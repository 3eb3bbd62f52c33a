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

// Tree dynamic program over budget vectors.
//
// For every vertex v and budget a the table holds the largest diversity of
// the subtree below v that a non-empty rescued set can reach while the
// leaves' budgets sum to at most a, or kNoSet when no non-empty set fits.
// Children are folded in one at a time: the budget is split between the
// children seen so far and the next child in every possible way.

#ifndef TPD_SRC_BUDGET_DP_H_
#define TPD_SRC_BUDGET_DP_H_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "tpd/dp_hours.h"
#include "tpd/error.h"
#include "tpd/model.h"

namespace tpd::internal {

inline constexpr int64_t kNoSet = std::numeric_limits<int64_t>::min() / 4;

inline uint64_t SaturatingMul(uint64_t a, uint64_t b) {
  uint64_t out;
  return __builtin_mul_overflow(a, b, &out) ? UINT64_MAX : out;
}

// Integer vectors 0 <= a <= caps in mixed-radix order, first digit fastest.
class BoxSpace {
 public:
  explicit BoxSpace(std::vector<int64_t> caps) : caps_(std::move(caps)) {
    stride_.resize(caps_.size());
    uint64_t s = 1;
    for (size_t k = 0; k < caps_.size(); ++k) {
      stride_[k] = s;
      s = SaturatingMul(s, static_cast<uint64_t>(caps_[k]) + 1);
    }
    size_ = s;
  }

  uint64_t size() const { return size_; }
  uint64_t root() const { return size_ - 1; }

  // Number of (a, d) pairs with d <= a, i.e. work per fold.
  uint64_t splits() const {
    uint64_t total = 1;
    for (int64_t c : caps_) {
      const uint64_t cu = static_cast<uint64_t>(c);
      total = SaturatingMul(total, (cu + 1) * (cu + 2) / 2);
    }
    return total;
  }

  void Decode(uint64_t index, std::vector<int64_t>* digits) const {
    digits->resize(caps_.size());
    for (size_t k = 0; k < caps_.size(); ++k) {
      (*digits)[k] = static_cast<int64_t>(index % (caps_[k] + 1));
      index /= caps_[k] + 1;
    }
  }

  uint64_t Encode(const std::vector<int64_t>& digits) const {
    uint64_t index = 0;
    for (size_t k = 0; k < caps_.size(); ++k) index += digits[k] * stride_[k];
    return index;
  }

  // fn(d, a - d) for every d <= a.
  template <typename Fn>
  void ForEachSplit(uint64_t a, Fn&& fn) const {
    const size_t dims = caps_.size();
    thread_local std::vector<int64_t> top, cur;
    Decode(a, &top);
    cur.assign(dims, 0);
    uint64_t d = 0;
    while (true) {
      fn(d, a - d);
      size_t k = 0;
      for (; k < dims; ++k) {
        if (cur[k] < top[k]) {
          ++cur[k];
          d += stride_[k];
          break;
        }
        d -= cur[k] * stride_[k];
        cur[k] = 0;
      }
      if (k == dims) return;
    }
  }

 private:
  std::vector<int64_t> caps_;
  std::vector<uint64_t> stride_;
  uint64_t size_ = 1;
};

// Subsets of a `bits`-element universe; splits are submask pairs.
class SubsetSpace {
 public:
  explicit SubsetSpace(int bits) : bits_(bits) {}

  uint64_t size() const { return uint64_t{1} << bits_; }
  uint64_t root() const { return size() - 1; }
  uint64_t splits() const {
    uint64_t total = 1;
    for (int i = 0; i < bits_; ++i) total = SaturatingMul(total, 3);
    return total;
  }

  template <typename Fn>
  void ForEachSplit(uint64_t a, Fn&& fn) const {
    uint64_t d = a;
    while (true) {
      fn(d, a ^ d);
      if (d == 0) return;
      d = (d - 1) & a;
    }
  }

 private:
  int bits_;
};

template <typename Space>
class BudgetTreeDp {
 public:
  // leaf_table(x)[a] != 0 iff leaf x alone is rescued with budget a.
  using LeafTable = std::function<const std::vector<uint8_t>&(TaxonId)>;

  BudgetTreeDp(const Instance& instance, const Space& space, LeafTable leaf_table,
               const StateLimits& limits)
      : instance_(instance), space_(space), leaf_table_(std::move(leaf_table)) {
    const PhyloTree& tree = instance.tree();
    uint64_t folds = 0;
    uint64_t stored = 0;
    for (VertexId v = 0; v < tree.num_vertices(); ++v) {
      if (tree.is_leaf(v)) continue;
      folds += tree.children(v).size() - 1;
      stored += tree.children(v).size();
    }
    if (space.size() > limits.max_states ||
        SaturatingMul(space.splits(), folds) > limits.max_transitions ||
        SaturatingMul(space.size(), stored) > limits.max_stored_values) {
      throw Error(ErrorCode::kStateSpaceTooLarge,
                  "budget space of " + std::to_string(space.size()) +
                      " vectors exceeds the configured limits");
    }
  }

  void Run() {
    const PhyloTree& tree = instance_.tree();
    stages_.assign(tree.num_vertices(), {});
    for (VertexId v = tree.num_vertices() - 1; v >= 0; --v) {
      if (tree.is_leaf(v)) continue;
      const auto kids = tree.children(v);
      auto& stages = stages_[v];
      stages.resize(kids.size());
      stages[0].resize(space_.size());
      for (uint64_t a = 0; a < space_.size(); ++a) {
        const int64_t h = ChildValue(kids[0], a);
        stages[0][a] = h == kNoSet ? kNoSet : h + tree.weight(kids[0]);
      }
      for (size_t i = 1; i < kids.size(); ++i) {
        const VertexId u = kids[i];
        const int64_t w = tree.weight(u);
        const std::vector<int64_t>& prev = stages[i - 1];
        std::vector<int64_t>& next = stages[i];
        next.assign(space_.size(), kNoSet);
        for (uint64_t a = 0; a < space_.size(); ++a) {
          int64_t best = kNoSet;
          space_.ForEachSplit(a, [&](uint64_t d, uint64_t r) {
            const int64_t s = prev[d];
            const int64_t h = ChildValue(u, r);
            if (s != kNoSet) best = std::max(best, s);
            if (h != kNoSet) {
              best = std::max(best, h + w);
              if (s != kNoSet) best = std::max(best, s + h + w);
            }
          });
          next[a] = best;
        }
      }
    }
  }

  int64_t Value(uint64_t a) const { return ChildValue(instance_.tree().root(), a); }

  // Leaves of an optimal set for budget a at the root, each with the budget
  // it was granted.
  std::vector<std::pair<TaxonId, uint64_t>> Extract(uint64_t a) const {
    std::vector<std::pair<TaxonId, uint64_t>> out;
    if (Value(a) != kNoSet) ExtractFrom(instance_.tree().root(), a, &out);
    return out;
  }

 private:
  int64_t ChildValue(VertexId u, uint64_t a) const {
    const PhyloTree& tree = instance_.tree();
    if (tree.is_leaf(u)) {
      return leaf_table_(instance_.vertex_taxon(u))[a] ? 0 : kNoSet;
    }
    return stages_[u].back()[a];
  }

  void ExtractFrom(VertexId v, uint64_t a,
                   std::vector<std::pair<TaxonId, uint64_t>>* out) const {
    const PhyloTree& tree = instance_.tree();
    if (tree.is_leaf(v)) {
      out->emplace_back(instance_.vertex_taxon(v), a);
      return;
    }
    const auto kids = tree.children(v);
    for (size_t i = kids.size() - 1;; --i) {
      const int64_t target = stages_[v][i][a];
      if (i == 0) {
        ExtractFrom(kids[0], a, out);
        return;
      }
      const VertexId u = kids[i];
      const int64_t w = tree.weight(u);
      const std::vector<int64_t>& prev = stages_[v][i - 1];
      // Prefer keeping earlier children (b1 = 1) so the loop continues.
      int mode = -1;
      uint64_t keep = 0, give = 0;
      space_.ForEachSplit(a, [&](uint64_t d, uint64_t r) {
        if (mode >= 0) return;
        const int64_t s = prev[d];
        const int64_t h = ChildValue(u, r);
        if (s != kNoSet && h != kNoSet && s + h + w == target) {
          mode = 2;
        } else if (s != kNoSet && s == target) {
          mode = 1;
        } else if (h != kNoSet && h + w == target) {
          mode = 0;
        }
        keep = d;
        give = r;
      });
      if (mode < 0) throw Error(ErrorCode::kInternal, "broken budget back-pointer");
      if (mode != 1) ExtractFrom(u, give, out);
      if (mode == 0) return;
      a = keep;
    }
  }

  const Instance& instance_;
  const Space& space_;
  LeafTable leaf_table_;
  std::vector<std::vector<std::vector<int64_t>>> stages_;
};

}  // namespace tpd::internal

#endif  // TPD_SRC_BUDGET_DP_H_
