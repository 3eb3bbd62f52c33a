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

// Color-coding solver parameterized by the target diversity D.
//
// Edge weights are spread over the hash domain [W], W = total weight, and a
// random map [W] -> [D] colors each edge with the set of colors of its
// weight units. A rescued set whose taxa jointly see all D colors has
// diversity at least D, so finding such a set under some coloring proves a
// yes answer; repeating with enough independent colorings makes a miss
// unlikely.

#ifndef TPD_FPT_D_H_
#define TPD_FPT_D_H_

#include <cstdint>
#include <span>
#include <vector>

#include "tpd/model.h"
#include "tpd/outcome.h"

namespace tpd {

using ColorMask = uint32_t;

struct DColoring {
  int num_colors = 0;
  std::vector<ColorMask> edge_colors;  // by head vertex, root entry unused
};

// `f` has one 0-based color per weight unit, edges taken in canonical order.
DColoring ColorEdgesFromHash(const PhyloTree& tree, int num_colors,
                             std::span<const int> f);

// Union of edge colors on each taxon's root path.
std::vector<ColorMask> TaxonColors(const Instance& instance,
                                   const DColoring& coloring);

enum class CoverMethod { kAuto, kDirect, kRanked };

// h(C) = OR over C' subset of C of f(C') AND g(C \ C'), for 0/1 tables of
// size 2^num_colors. kDirect walks all submasks, kRanked uses ranked
// zeta/Moebius transforms. Both give identical tables.
std::vector<uint8_t> BooleanCoverCombine(std::span<const uint8_t> f,
                                         std::span<const uint8_t> g,
                                         int num_colors, CoverMethod method);

struct ColoredOptions {
  // Strict solver only. Uses the bound of the earlier class instead of the
  // current one when extending a single-team set; kept for tests that show
  // it rejects feasible sets.
  bool earlier_class_bound = false;
  CoverMethod cover = CoverMethod::kAuto;
};

struct ColoredResult {
  bool yes = false;
  TaxaSet saved;
  std::vector<TaxaSet> per_team;  // strict solver only; disjoint
};

// Decides whether some feasible subset of `candidates` sees every color.
ColoredResult SolveColoredTimePd(const Instance& instance,
                                 const DerivedIndex& index,
                                 const DColoring& coloring,
                                 std::span<const TaxonId> candidates);

ColoredResult SolveColoredSTimePd(const Instance& instance,
                                  const DerivedIndex& index,
                                  const DColoring& coloring,
                                  std::span<const TaxonId> candidates,
                                  const ColoredOptions& options = {});

// ceil(e^exponent * ln(1/delta)), saturating. Throws kBadParams unless
// 0 < delta < 1.
uint64_t TrialCount(int exponent, double delta);

struct RandomizedOptions {
  double delta = 1e-3;
  uint64_t seed = 0;
  // Limit on D (on 2*Dbar for the loss-bounded solver). The trial count grows
  // like e^max_colors, so the default keeps a no-answer within minutes.
  int max_colors = 12;
  int threads = 1;
};

// Collaborative mode. Throws kDTooLarge when D exceeds max_colors and no
// shortcut applies.
SolveOutcome SolveTimePdByD(const Instance& instance,
                            const RandomizedOptions& options = {});

// Strict mode.
SolveOutcome SolveSTimePdByD(const Instance& instance,
                             const RandomizedOptions& options = {});

}  // namespace tpd

#endif  // TPD_FPT_D_H_
