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

// Color-coding solver parameterized by the allowed diversity loss
// Dbar = PD(X) - D, for binary trees in collaborative mode.
//
// Instead of the rescued set, the algorithm builds the sacrificed taxa as a
// sequence of anchored tuples (x, v, e): x is a sacrificed taxon, v a strict
// ancestor of x, and e an out-edge of v off the path from v to x. The path
// edges from v down to x are exactly the edges whose whole offspring is lost
// once x goes, so their total weight is the diversity loss. Each edge gets
// one key color in [2*Dbar] and, if its weight w is at most Dbar, w-1
// further colors; the key color of e is what lets a later tuple hang below v.

#ifndef TPD_FPT_DBAR_H_
#define TPD_FPT_DBAR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tpd/fpt_d.h"
#include "tpd/model.h"
#include "tpd/outcome.h"

namespace tpd {

struct DbarColoring {
  int dbar = 0;
  std::vector<int> key_color;        // by head vertex, in [0, 2*dbar)
  std::vector<ColorMask> colors;     // key color plus extra colors
  std::vector<uint8_t> small;        // weight <= dbar
  // Small edge whose colors are all distinct and number exactly its weight.
  // Only proper edges may lie on tuple paths.
  std::vector<uint8_t> proper;

  int num_colors() const { return 2 * dbar; }
};

// Explicit coloring; `extra[v]` lists the additional colors of small edge v.
DbarColoring MakeDbarColoring(const PhyloTree& tree, int dbar,
                              std::span<const int> key,
                              std::span<const std::vector<int>> extra);

// Small edges first, then the rest, each group in canonical order.
std::vector<VertexId> DbarEdgeOrder(const PhyloTree& tree, int dbar);

// Hash domain size: one unit per edge for key colors plus weight-1 units per
// small edge.
int64_t DbarHashDomain(const PhyloTree& tree, int dbar);

// With edges e_1..e_m in DbarEdgeOrder: key(e_j) = f(j) and the extra colors
// of small e_j are f(W_{j-1}+1..W_j) where W_0 = m and
// W_j = W_{j-1} + weight(e_j) - 1.
DbarColoring ColorEdgesForDbar(const PhyloTree& tree, int dbar,
                               std::span<const int> f);

struct AnchoredTuple {
  TaxonId taxon = kNone;
  VertexId anchor = kNone;
  VertexId edge = kNone;  // head vertex of the out-edge of anchor

  bool operator==(const AnchoredTuple&) const = default;
};

using AnchoredSet = std::vector<AnchoredTuple>;

// Head vertices of the path from `anchor` down to the taxon, bottom up.
std::vector<VertexId> TuplePath(const Instance& instance, const AnchoredTuple& t);

bool IsWellFormed(const Instance& instance, const AnchoredTuple& t);

// Every tuple (x, v, e) of the tree, ordered by taxon.
std::vector<AnchoredTuple> AllTuples(const Instance& instance);

// Path colors distinct and inside c1, key color of e in c2, path made of
// proper small edges.
bool IsGood(const Instance& instance, const DbarColoring& coloring,
            const AnchoredTuple& t, ColorMask c1, ColorMask c2);

// No tuple with taxon surviving to class q (0-based) is good for (c1, c2).
bool IsQGrounding(const Instance& instance, const DerivedIndex& index,
                  const DbarColoring& coloring, ColorMask c1, ColorMask c2,
                  int q);

// Ordering with nondecreasing extinction time in which no tuple's key color
// occurs on the paths of itself and the tuples before it.
std::optional<AnchoredSet> FindValidOrdering(const Instance& instance,
                                             const DbarColoring& coloring,
                                             const AnchoredSet& set);

bool CheckColorRespectful(const Instance& instance, const DbarColoring& coloring,
                          const AnchoredSet& set);

// Taxa of the tuples, and the rescued complement.
TaxaSet AnchoredTaxa(const AnchoredSet& set);
TaxaSet RescuedBy(const Instance& instance, const AnchoredSet& set);

// Edges whose whole offspring lies in `lost`, by head vertex.
std::vector<VertexId> DeadEdges(const Instance& instance, const TaxaSet& lost);

// Builds the anchored set for sacrificing the complement of `saved`,
// tuple i hanging below the topmost edge that dies with its taxon. Requires
// a binary tree and a non-empty `saved`.
AnchoredSet BuildAnchoredWitness(const Instance& instance, const TaxaSet& saved);

enum class DbarTableMode {
  kReachable,     // memoized from the maximal final states
  kFull,          // every state, increasing |c1|
  kFullReversed,  // every state, increasing |c1| but masks visited downward
};

struct DbarRunStats {
  uint64_t entries = 0;
  std::vector<int64_t> table;  // full modes only, in a fixed state order
};

struct DbarColoredResult {
  bool yes = false;
  AnchoredSet sacrificed;  // ordered by extinction time
  TaxaSet saved;
  DbarRunStats stats;
};

// One colored run. Requires a binary tree and coloring.dbar == index.dbar.
DbarColoredResult RunAlgorithmDbar(const Instance& instance,
                                   const DerivedIndex& index,
                                   const DbarColoring& coloring,
                                   DbarTableMode mode = DbarTableMode::kReachable);

// Number of (c1, c2, q) states with disjoint c1, c2 in [2*dbar], |c1| <= dbar.
uint64_t DbarTableSize(int dbar, int num_classes);

// Throws kNonBinaryTree, kDbarTooLarge (2 * dbar > max_colors),
// kUnsupportedMode.
SolveOutcome SolveTimePdByDbar(const Instance& instance,
                               const RandomizedOptions& options = {});

}  // namespace tpd

#endif  // TPD_FPT_DBAR_H_
