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

#include "tpd/fpt_dbar.h"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <span>
#include <utility>

#include "tpd/error.h"
#include "tpd/feasibility.h"
#include "tpd/rng.h"
#include "trials.h"

namespace tpd {
namespace {

constexpr int64_t kNegInf = std::numeric_limits<int64_t>::min() / 4;
constexpr int kMaxDbarColors = 28;  // keeps (c1, c2, q) in one 64-bit key

ColorMask Bit(int color) { return ColorMask{1} << color; }

// Tuple data the table needs, restricted to tuples that can ever be good.
struct Candidate {
  AnchoredTuple tuple;
  int cls;
  int64_t length;
  ColorMask path;
  int key;
};

struct TupleWithPath {
  AnchoredTuple tuple;
  std::vector<VertexId> path;
};

std::vector<TupleWithPath> TuplesWithPaths(const Instance& instance) {
  std::vector<TupleWithPath> out;
  for (const AnchoredTuple& t : AllTuples(instance)) {
    out.push_back({t, TuplePath(instance, t)});
  }
  return out;
}

class DbarTable {
 public:
  DbarTable(std::span<const TupleWithPath> tuples, const DerivedIndex& index,
            const DbarColoring& coloring)
      : index_(index), v_(index.num_classes) {
    for (const auto& [t, tuple_path] : tuples) {
      ColorMask path = 0;
      bool usable = true;
      for (VertexId e : tuple_path) {
        if (!coloring.proper[e] || (path & coloring.colors[e]) != 0) {
          usable = false;
          break;
        }
        path |= coloring.colors[e];
      }
      const int key = coloring.key_color[t.edge];
      if (!usable || (path & Bit(key)) != 0) continue;
      candidates_.push_back({t, index.class_of[t.taxon],
                             index.rescue_length[t.taxon], path, key});
      path_colors_ |= path;
      key_colors_ |= Bit(key);
    }
    // AllTuples is ordered by taxon, hence by class.
    class_end_.assign(v_, 0);
    for (int q = 0, k = 0; q < v_; ++q) {
      while (k < static_cast<int>(candidates_.size()) && candidates_[k].cls <= q) ++k;
      class_end_[q] = k;
    }
    base_.assign(v_, 0);
    bool clear = true;
    for (int q = 0; q < v_; ++q) {
      base_[q] = clear ? 0 : kNegInf;
      clear = clear && index.deficit[q] <= 0;
    }
    // range_max_[a * v + b] = max deficit over classes a..b.
    range_max_.assign(static_cast<size_t>(v_) * v_, kNegInf);
    for (int a = 0; a < v_; ++a) {
      int64_t m = kNegInf;
      for (int b = a; b < v_; ++b) {
        m = std::max(m, index.deficit[b]);
        range_max_[a * v_ + b] = m;
      }
    }
  }

  // Value of state (c1, c2, q) given a lookup for smaller states; `choice`
  // receives the tuple index or -1 for a grounded state.
  template <typename Lookup>
  int64_t Evaluate(ColorMask c1, ColorMask c2, int q, Lookup&& lookup,
                   int* choice) const {
    bool any_good = false;
    int64_t best = kNegInf;
    *choice = -1;
    for (int k = 0; k < class_end_[q]; ++k) {
      const Candidate& t = candidates_[k];
      if ((t.path & ~c1) != 0 || (c2 & Bit(t.key)) == 0) continue;
      any_good = true;
      const int64_t sub =
          lookup(c1 & ~t.path, (c2 | t.path) & ~Bit(t.key), t.cls);
      if (sub == kNegInf) continue;
      const int64_t value = sub + t.length;
      const int64_t floor = t.cls < q ? range_max_[t.cls * v_ + q - 1] : kNegInf;
      if (value >= floor && value > best) {
        best = value;
        *choice = k;
      }
    }
    return any_good ? best : base_[q];
  }

  // A state's value only depends on c1 through path colors and on c2
  // through key colors of candidates.
  ColorMask path_colors() const { return path_colors_; }
  ColorMask key_colors() const { return key_colors_; }

  const Candidate& candidate(int k) const { return candidates_[k]; }
  int num_classes() const { return v_; }
  int64_t final_deficit() const { return index_.deficit[v_ - 1]; }

 private:
  const DerivedIndex& index_;
  int v_;
  std::vector<Candidate> candidates_;
  ColorMask path_colors_ = 0;
  ColorMask key_colors_ = 0;
  std::vector<int> class_end_;
  std::vector<int64_t> base_;
  std::vector<int64_t> range_max_;
};

// Open-addressing map from state keys to table entries. Clearing is O(1)
// so one memo can serve every trial.
class StateMemo {
 public:
  struct Entry {
    int64_t value;
    int choice;
  };

  StateMemo() { Resize(1 << 10); }

  void Clear() {
    if (++epoch_ == 0) {
      std::fill(stamps_.begin(), stamps_.end(), 0);
      epoch_ = 1;
    }
    size_ = 0;
  }

  const Entry* Find(uint64_t key) const {
    for (size_t i = Slot(key);; i = (i + 1) & mask_) {
      if (stamps_[i] != epoch_) return nullptr;
      if (keys_[i] == key) return &entries_[i];
    }
  }

  void Insert(uint64_t key, Entry entry) {
    if (2 * (size_ + 1) > keys_.size()) Grow();
    Place(key, entry);
    ++size_;
  }

 private:
  size_t Slot(uint64_t key) const { return SplitMix64(key) & mask_; }

  void Place(uint64_t key, Entry entry) {
    size_t i = Slot(key);
    while (stamps_[i] == epoch_) i = (i + 1) & mask_;
    stamps_[i] = epoch_;
    keys_[i] = key;
    entries_[i] = entry;
  }

  void Resize(size_t capacity) {
    keys_.assign(capacity, 0);
    entries_.assign(capacity, Entry{});
    stamps_.assign(capacity, 0);
    mask_ = capacity - 1;
  }

  void Grow() {
    std::vector<uint64_t> keys;
    std::vector<Entry> entries;
    for (size_t i = 0; i < keys_.size(); ++i) {
      if (stamps_[i] != epoch_) continue;
      keys.push_back(keys_[i]);
      entries.push_back(entries_[i]);
    }
    Resize(2 * keys_.size());
    for (size_t i = 0; i < keys.size(); ++i) Place(keys[i], entries[i]);
  }

  std::vector<uint64_t> keys_;
  std::vector<Entry> entries_;
  std::vector<uint32_t> stamps_;
  uint32_t epoch_ = 1;
  size_t mask_ = 0;
  size_t size_ = 0;
};

uint64_t StateKey(ColorMask c1, ColorMask c2, int q) {
  return uint64_t{c1} | (uint64_t{c2} << kMaxDbarColors) |
         (static_cast<uint64_t>(q) << (2 * kMaxDbarColors));
}

// Calls fn(mask) for every subset of [n] with exactly k elements.
template <typename Fn>
void ForEachCombination(int n, int k, Fn&& fn) {
  if (k == 0) {
    fn(ColorMask{0});
    return;
  }
  if (k > n) return;
  uint64_t mask = (uint64_t{1} << k) - 1;
  while (mask < (uint64_t{1} << n)) {
    fn(static_cast<ColorMask>(mask));
    const uint64_t low = mask & -mask;
    const uint64_t ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
  }
}

struct Found {
  ColorMask c1 = 0;
  ColorMask c2 = 0;
};

AnchoredSet Unwind(const DbarTable& table, Found start,
                   const std::function<int(ColorMask, ColorMask, int)>& choice_of) {
  AnchoredSet out;
  ColorMask c1 = start.c1;
  ColorMask c2 = start.c2;
  int q = table.num_classes() - 1;
  while (true) {
    const int k = choice_of(c1, c2, q);
    if (k < 0) break;
    const Candidate& t = table.candidate(k);
    out.push_back(t.tuple);
    c1 &= ~t.path;
    c2 = (c2 | t.path) & ~Bit(t.key);
    q = t.cls;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

DbarColoredResult RunReachable(const DbarTable& table, int dbar, StateMemo* memo) {
  memo->Clear();
  uint64_t entries = 0;
  const ColorMask used = table.path_colors();
  const ColorMask keys = table.key_colors();
  auto canonical_key = [&](ColorMask c1, ColorMask c2, int q) {
    return StateKey(c1 & used, c2 & keys, q);
  };
  auto solve = [&](auto&& self, ColorMask c1, ColorMask c2, int q) -> int64_t {
    const uint64_t key = canonical_key(c1, c2, q);
    if (const StateMemo::Entry* hit = memo->Find(key)) return hit->value;
    int choice;
    const int64_t value = table.Evaluate(
        c1, c2, q,
        [&](ColorMask a, ColorMask b, int p) { return self(self, a, b, p); },
        &choice);
    memo->Insert(key, {value, choice});
    ++entries;
    return value;
  };
  const int colors = 2 * dbar;
  const ColorMask all = static_cast<ColorMask>((uint64_t{1} << colors) - 1);
  const int last = table.num_classes() - 1;
  DbarColoredResult out;
  std::optional<Found> found;
  // The table is monotone in both color sets, so only maximal pairs matter:
  // c2 is the complement of c1, and c1 holds every path color that is not a
  // key color whenever the size bound leaves room for it.
  const ColorMask free_colors = used & ~keys;
  for (ColorMask c1 = used;; c1 = (c1 - 1) & used) {
    const int size = std::popcount(c1);
    const bool maximal = size == dbar || (free_colors & ~c1) == 0;
    if (size <= dbar && maximal &&
        solve(solve, c1, all & ~c1, last) >= table.final_deficit()) {
      found = Found{c1, all & ~c1};
      break;
    }
    if (c1 == 0) break;
  }
  out.stats.entries = entries;
  if (found) {
    out.yes = true;
    out.sacrificed = Unwind(table, *found, [&](ColorMask a, ColorMask b, int q) {
      return memo->Find(canonical_key(a, b, q))->choice;
    });
  }
  return out;
}

DbarColoredResult RunFull(const DbarTable& table, int dbar, bool reversed) {
  const int colors = 2 * dbar;
  const int v = table.num_classes();
  // Ternary index: digit 1 for colors in c1, 2 for colors in c2.
  uint64_t states = 1;
  for (int i = 0; i < colors; ++i) states *= 3;
  if (states * v > 60'000'000) {
    throw Error(ErrorCode::kStateSpaceTooLarge, "full table too large");
  }
  std::vector<uint64_t> pow3(colors + 1, 1);
  for (int i = 1; i <= colors; ++i) pow3[i] = pow3[i - 1] * 3;
  auto ternary = [&](ColorMask m) {
    uint64_t t = 0;
    for (; m != 0; m &= m - 1) t += pow3[std::countr_zero(m)];
    return t;
  };
  auto index_of = [&](ColorMask c1, ColorMask c2, int q) {
    return (ternary(c1) + 2 * ternary(c2)) * v + q;
  };
  DbarColoredResult out;
  std::vector<int64_t>& values = out.stats.table;
  values.assign(states * v, kNegInf);
  std::vector<int> choices(states * v, -1);
  const ColorMask all = static_cast<ColorMask>((uint64_t{1} << colors) - 1);

  std::vector<ColorMask> layer;
  for (int k = 0; k <= dbar; ++k) {
    layer.clear();
    ForEachCombination(colors, k, [&](ColorMask c1) { layer.push_back(c1); });
    if (reversed) std::reverse(layer.begin(), layer.end());
    for (ColorMask c1 : layer) {
      const ColorMask rest = all & ~c1;
      std::vector<ColorMask> c2s;
      for (ColorMask c2 = rest;; c2 = (c2 - 1) & rest) {
        c2s.push_back(c2);
        if (c2 == 0) break;
      }
      if (reversed) std::reverse(c2s.begin(), c2s.end());
      for (ColorMask c2 : c2s) {
        for (int qq = 0; qq < v; ++qq) {
          const int q = reversed ? v - 1 - qq : qq;
          int choice;
          const int64_t value = table.Evaluate(
              c1, c2, q,
              [&](ColorMask a, ColorMask b, int p) { return values[index_of(a, b, p)]; },
              &choice);
          values[index_of(c1, c2, q)] = value;
          choices[index_of(c1, c2, q)] = choice;
          ++out.stats.entries;
        }
      }
    }
  }
  std::optional<Found> found;
  for (int k = 0; k <= dbar && !found; ++k) {
    ForEachCombination(colors, k, [&](ColorMask c1) {
      const ColorMask rest = all & ~c1;
      for (ColorMask c2 = rest; !found; c2 = (c2 - 1) & rest) {
        if (values[index_of(c1, c2, v - 1)] >= table.final_deficit()) {
          found = Found{c1, c2};
        }
        if (c2 == 0) break;
      }
    });
  }
  if (found) {
    out.yes = true;
    out.sacrificed = Unwind(table, *found, [&](ColorMask a, ColorMask b, int q) {
      return choices[index_of(a, b, q)];
    });
  }
  return out;
}

DbarColoredResult RunDbar(const Instance& instance, const DerivedIndex& index,
                          std::span<const TupleWithPath> tuples,
                          const DbarColoring& coloring, DbarTableMode mode,
                          StateMemo* memo) {
  const DbarTable table(tuples, index, coloring);
  DbarColoredResult out =
      mode == DbarTableMode::kReachable
          ? RunReachable(table, coloring.dbar, memo)
          : RunFull(table, coloring.dbar, mode == DbarTableMode::kFullReversed);
  if (out.yes) out.saved = RescuedBy(instance, out.sacrificed);
  return out;
}

void RequireBinary(const PhyloTree& tree) {
  if (!tree.IsBinary()) {
    throw Error(ErrorCode::kNonBinaryTree,
                "the loss-parameterized solver needs a binary tree");
  }
}

}  // namespace

DbarColoring MakeDbarColoring(const PhyloTree& tree, int dbar,
                              std::span<const int> key,
                              std::span<const std::vector<int>> extra) {
  if (dbar < 1 || 2 * dbar > kMaxDbarColors) {
    throw Error(ErrorCode::kDbarTooLarge, "dbar must lie in [1, 14]");
  }
  const int n = tree.num_vertices();
  if (static_cast<int>(key.size()) != n || static_cast<int>(extra.size()) != n) {
    throw Error(ErrorCode::kBadParams, "one key and extra list per vertex");
  }
  DbarColoring out;
  out.dbar = dbar;
  out.key_color.assign(n, 0);
  out.colors.assign(n, 0);
  out.small.assign(n, 0);
  out.proper.assign(n, 0);
  auto check = [&](int c) {
    if (c < 0 || c >= 2 * dbar) throw Error(ErrorCode::kBadParams, "color out of range");
  };
  for (VertexId v = 1; v < n; ++v) {
    check(key[v]);
    out.key_color[v] = key[v];
    out.colors[v] = Bit(key[v]);
    out.small[v] = tree.weight(v) <= dbar;
    if (!out.small[v]) continue;
    int occurrences = 1;
    for (int c : extra[v]) {
      check(c);
      out.colors[v] |= Bit(c);
      ++occurrences;
    }
    out.proper[v] = occurrences == tree.weight(v) &&
                    std::popcount(out.colors[v]) == occurrences;
  }
  return out;
}

std::vector<VertexId> DbarEdgeOrder(const PhyloTree& tree, int dbar) {
  std::vector<VertexId> order;
  for (VertexId v = 1; v < tree.num_vertices(); ++v) {
    if (tree.weight(v) <= dbar) order.push_back(v);
  }
  for (VertexId v = 1; v < tree.num_vertices(); ++v) {
    if (tree.weight(v) > dbar) order.push_back(v);
  }
  return order;
}

int64_t DbarHashDomain(const PhyloTree& tree, int dbar) {
  int64_t w = tree.num_edges();
  for (VertexId v = 1; v < tree.num_vertices(); ++v) {
    if (tree.weight(v) <= dbar) w += tree.weight(v) - 1;
  }
  return w;
}

DbarColoring ColorEdgesForDbar(const PhyloTree& tree, int dbar,
                               std::span<const int> f) {
  if (static_cast<int64_t>(f.size()) != DbarHashDomain(tree, dbar)) {
    throw Error(ErrorCode::kBadParams, "hash has the wrong domain size");
  }
  const int n = tree.num_vertices();
  std::vector<int> key(n, 0);
  std::vector<std::vector<int>> extra(n);
  const std::vector<VertexId> order = DbarEdgeOrder(tree, dbar);
  size_t w = order.size();
  for (size_t j = 0; j < order.size(); ++j) {
    const VertexId e = order[j];
    key[e] = f[j];
    if (tree.weight(e) > dbar) continue;
    for (int64_t u = 1; u < tree.weight(e); ++u) extra[e].push_back(f[w++]);
  }
  return MakeDbarColoring(tree, dbar, key, extra);
}

std::vector<VertexId> TuplePath(const Instance& instance, const AnchoredTuple& t) {
  const PhyloTree& tree = instance.tree();
  std::vector<VertexId> path;
  for (VertexId v = instance.taxon_vertex(t.taxon); v != t.anchor; v = tree.parent(v)) {
    if (v == tree.root()) {
      throw Error(ErrorCode::kBadParams, "anchor is not an ancestor of the taxon");
    }
    path.push_back(v);
  }
  return path;
}

bool IsWellFormed(const Instance& instance, const AnchoredTuple& t) {
  const PhyloTree& tree = instance.tree();
  if (t.taxon < 0 || t.taxon >= instance.num_taxa()) return false;
  if (t.anchor < 0 || t.anchor >= tree.num_vertices()) return false;
  if (t.edge <= 0 || t.edge >= tree.num_vertices()) return false;
  const VertexId leaf = instance.taxon_vertex(t.taxon);
  return leaf != t.anchor && tree.IsAncestor(t.anchor, leaf) &&
         tree.parent(t.edge) == t.anchor && !tree.IsAncestor(t.edge, leaf);
}

std::vector<AnchoredTuple> AllTuples(const Instance& instance) {
  const PhyloTree& tree = instance.tree();
  std::vector<AnchoredTuple> out;
  for (TaxonId x = 0; x < instance.num_taxa(); ++x) {
    VertexId below = instance.taxon_vertex(x);
    while (below != tree.root()) {
      const VertexId anchor = tree.parent(below);
      for (VertexId c : tree.children(anchor)) {
        if (c != below) out.push_back({x, anchor, c});
      }
      below = anchor;
    }
  }
  return out;
}

bool IsGood(const Instance& instance, const DbarColoring& coloring,
            const AnchoredTuple& t, ColorMask c1, ColorMask c2) {
  ColorMask seen = 0;
  for (VertexId e : TuplePath(instance, t)) {
    if (!coloring.proper[e] || (seen & coloring.colors[e]) != 0) return false;
    seen |= coloring.colors[e];
  }
  return (seen & ~c1) == 0 && (c2 & Bit(coloring.key_color[t.edge])) != 0;
}

bool IsQGrounding(const Instance& instance, const DerivedIndex& index,
                  const DbarColoring& coloring, ColorMask c1, ColorMask c2,
                  int q) {
  for (const AnchoredTuple& t : AllTuples(instance)) {
    if (index.class_of[t.taxon] > q) continue;
    if (IsGood(instance, coloring, t, c1, c2)) return false;
  }
  return true;
}

std::optional<AnchoredSet> FindValidOrdering(const Instance& instance,
                                             const DbarColoring& coloring,
                                             const AnchoredSet& set) {
  const int k = static_cast<int>(set.size());
  std::vector<ColorMask> path(k, 0);
  for (int i = 0; i < k; ++i) {
    for (VertexId e : TuplePath(instance, set[i])) path[i] |= coloring.colors[e];
  }
  auto ex = [&](int i) { return instance.taxon(set[i].taxon).extinction_time; };
  std::vector<char> used(k, 0);
  std::vector<int> order;
  auto search = [&](auto&& self, ColorMask seen) -> bool {
    if (static_cast<int>(order.size()) == k) return true;
    int64_t next_ex = std::numeric_limits<int64_t>::max();
    for (int i = 0; i < k; ++i) {
      if (!used[i]) next_ex = std::min(next_ex, ex(i));
    }
    for (int i = 0; i < k; ++i) {
      if (used[i] || ex(i) != next_ex) continue;
      const ColorMask now = seen | path[i];
      if (now & Bit(coloring.key_color[set[i].edge])) continue;
      used[i] = 1;
      order.push_back(i);
      if (self(self, now)) return true;
      order.pop_back();
      used[i] = 0;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  AnchoredSet out;
  for (int i : order) out.push_back(set[i]);
  return out;
}

bool CheckColorRespectful(const Instance& instance, const DbarColoring& coloring,
                          const AnchoredSet& set) {
  std::vector<char> on_path(instance.tree().num_vertices(), 0);
  ColorMask path_colors = 0;
  for (const AnchoredTuple& t : set) {
    if (!IsWellFormed(instance, t)) return false;
    for (VertexId e : TuplePath(instance, t)) {
      if (on_path[e]) return false;  // paths must be edge-disjoint
      on_path[e] = 1;
      if (!coloring.small[e] || !coloring.proper[e]) return false;
      if (path_colors & coloring.colors[e]) return false;
      path_colors |= coloring.colors[e];
    }
  }
  std::vector<VertexId> edges;
  for (const AnchoredTuple& t : set) edges.push_back(t.edge);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  ColorMask keys = 0;
  for (VertexId e : edges) {
    if (keys & Bit(coloring.key_color[e])) return false;
    keys |= Bit(coloring.key_color[e]);
  }
  return FindValidOrdering(instance, coloring, set).has_value();
}

TaxaSet AnchoredTaxa(const AnchoredSet& set) {
  std::vector<TaxonId> ids;
  for (const AnchoredTuple& t : set) ids.push_back(t.taxon);
  return TaxaSet(std::move(ids));
}

TaxaSet RescuedBy(const Instance& instance, const AnchoredSet& set) {
  const TaxaSet lost = AnchoredTaxa(set);
  std::vector<TaxonId> ids;
  for (TaxonId x = 0; x < instance.num_taxa(); ++x) {
    if (!lost.contains(x)) ids.push_back(x);
  }
  return TaxaSet(std::move(ids));
}

std::vector<VertexId> DeadEdges(const Instance& instance, const TaxaSet& lost) {
  const PhyloTree& tree = instance.tree();
  std::vector<char> alive(tree.num_vertices(), 0);
  for (VertexId v = tree.num_vertices() - 1; v >= 1; --v) {
    const TaxonId x = instance.vertex_taxon(v);
    if (x != kNone && !lost.contains(x)) alive[v] = 1;
    if (alive[v]) alive[tree.parent(v)] = 1;
  }
  std::vector<VertexId> out;
  for (VertexId v = 1; v < tree.num_vertices(); ++v) {
    if (!alive[v]) out.push_back(v);
  }
  return out;
}

AnchoredSet BuildAnchoredWitness(const Instance& instance, const TaxaSet& saved) {
  const PhyloTree& tree = instance.tree();
  RequireBinary(tree);
  if (saved.empty()) throw Error(ErrorCode::kBadParams, "saved set must be non-empty");
  std::vector<TaxonId> lost;
  for (TaxonId x = 0; x < instance.num_taxa(); ++x) {
    if (!saved.contains(x)) lost.push_back(x);  // canonical order is by ex
  }
  const int k = static_cast<int>(lost.size());
  std::vector<VertexId> top(k);  // w_i, head of the topmost newly dead edge
  std::vector<char> dead(tree.num_vertices(), 0);
  for (int i = 0; i < k; ++i) {
    const std::vector<VertexId> now =
        DeadEdges(instance, TaxaSet(std::vector<TaxonId>(lost.begin(), lost.begin() + i + 1)));
    VertexId best = kNone;
    for (VertexId e : now) {
      if (!dead[e] && (best == kNone || tree.depth(e) < tree.depth(best))) best = e;
    }
    for (VertexId e : now) dead[e] = 1;
    top[i] = best;
  }
  AnchoredSet out;
  for (int i = 0; i < k; ++i) {
    const VertexId anchor = tree.parent(top[i]);
    VertexId edge = kNone;
    for (int j = i + 1; j < k && edge == kNone; ++j) {
      if (tree.parent(top[j]) == anchor) edge = top[j];
    }
    if (edge == kNone) {
      // The sibling of w_i is still alive after step i.
      const TaxaSet prefix(std::vector<TaxonId>(lost.begin(), lost.begin() + i + 1));
      const std::vector<VertexId> now = DeadEdges(instance, prefix);
      for (VertexId c : tree.children(anchor)) {
        if (c != top[i] && !std::binary_search(now.begin(), now.end(), c)) edge = c;
      }
    }
    if (edge == kNone) throw Error(ErrorCode::kInternal, "no free out-edge at anchor");
    out.push_back({lost[i], anchor, edge});
  }
  return out;
}

DbarColoredResult RunAlgorithmDbar(const Instance& instance,
                                   const DerivedIndex& index,
                                   const DbarColoring& coloring,
                                   DbarTableMode mode) {
  RequireBinary(instance.tree());
  if (coloring.dbar != index.dbar || coloring.dbar < 1) {
    throw Error(ErrorCode::kBadParams, "coloring built for a different loss bound");
  }
  StateMemo memo;
  return RunDbar(instance, index, TuplesWithPaths(instance), coloring, mode, &memo);
}

uint64_t DbarTableSize(int dbar, int num_classes) {
  const int colors = 2 * dbar;
  uint64_t total = 0;
  uint64_t binom = 1;  // C(colors, k)
  for (int k = 0; k <= dbar; ++k) {
    total += binom * (uint64_t{1} << (colors - k));
    binom = binom * (colors - k) / (k + 1);
  }
  return total * static_cast<uint64_t>(num_classes);
}

SolveOutcome SolveTimePdByDbar(const Instance& instance,
                               const RandomizedOptions& options) {
  const std::string name = "fpt-dbar";
  if (instance.mode() != Mode::kCollaborative) {
    throw Error(ErrorCode::kUnsupportedMode, name + " handles collaborative instances");
  }
  RequireBinary(instance.tree());
  const DerivedIndex index = BuildDerivedIndex(instance);
  if (auto trivial = TrivialOutcome(instance, index, name)) return *trivial;
  const TaxaSet everything = TaxaSet::Range(instance.num_taxa());
  if (index.dbar == 0) {
    return CollaborativeFeasible(index, everything)
               ? MakeYes(instance, index, everything, std::nullopt, name)
               : MakeNo(name);
  }
  if (index.dbar > std::min(options.max_colors, kMaxDbarColors) / 2) {
    throw Error(ErrorCode::kDbarTooLarge,
                "loss bound " + std::to_string(index.dbar) + " exceeds the limit");
  }
  const int dbar = static_cast<int>(index.dbar);
  const uint64_t planned = TrialCount(2 * dbar, options.delta);
  const PhyloTree& tree = instance.tree();
  const size_t domain = static_cast<size_t>(DbarHashDomain(tree, dbar));
  auto coloring_for = [&](uint64_t t, std::vector<int>* f) {
    std::mt19937_64 rng(TrialSeed(options.seed, t));
    for (int& c : *f) c = static_cast<int>(UniformBelow(rng, 2 * dbar));
    return ColorEdgesForDbar(tree, dbar, *f);
  };
  const std::vector<TupleWithPath> tuples = TuplesWithPaths(instance);
  auto run_trial = [&](uint64_t t, std::vector<int>* f, StateMemo* memo) {
    return RunDbar(instance, index, tuples, coloring_for(t, f),
                   DbarTableMode::kReachable, memo);
  };
  auto make_worker = [&] {
    return [&, f = std::vector<int>(domain), memo = StateMemo()](uint64_t t) mutable {
      return run_trial(t, &f, &memo).yes;
    };
  };
  const auto hit = internal::FirstSuccessfulTrial(planned, options.threads, make_worker);
  SolveOutcome out;
  if (hit) {
    std::vector<int> f(domain);
    StateMemo memo;
    const DbarColoredResult run = run_trial(*hit, &f, &memo);
    out = MakeYes(instance, index, run.saved, std::nullopt, name);
    out.trials = *hit + 1;
  } else {
    out = MakeNo(name);
    out.trials = planned;
  }
  out.planned_trials = planned;
  out.seed = options.seed;
  out.delta = options.delta;
  return out;
}

}  // namespace tpd
