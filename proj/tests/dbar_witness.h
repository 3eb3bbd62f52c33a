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


// Checks on the anchored sets that stand in for sacrificed taxa, shared by
// the unit and acceptance tests.

#ifndef TPD_TESTS_DBAR_WITNESS_H_
#define TPD_TESTS_DBAR_WITNESS_H_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tpd/fpt_dbar.h"
#include "tpd/model.h"
#include "tpd/rng.h"

namespace tpd::testing {

// Coloring under which `set` is color-respectful: path edges get distinct
// colors, out-edges off the paths distinct fresh key colors, and everything
// else random colors. Requires 2 * dbar colors to suffice.
inline DbarColoring WitnessColoring(const Instance& instance, const AnchoredSet& set,
                                    int dbar, std::mt19937_64& rng) {
  const PhyloTree& tree = instance.tree();
  const int n = tree.num_vertices();
  const int colors = 2 * dbar;
  std::vector<int> key(n, -1);
  std::vector<std::vector<int>> extra(n);
  int next = 0;
  auto fresh = [&] {
    if (next >= colors) throw std::logic_error("not enough colors");
    return next++;
  };
  for (const AnchoredTuple& t : set) {
    for (VertexId e : TuplePath(instance, t)) {
      key[e] = fresh();
      for (int64_t u = 1; u < tree.weight(e); ++u) extra[e].push_back(fresh());
    }
  }
  for (const AnchoredTuple& t : set) {
    if (key[t.edge] == -1) key[t.edge] = fresh();
  }
  for (VertexId v = 1; v < n; ++v) {
    if (key[v] != -1) continue;
    key[v] = static_cast<int>(UniformBelow(rng, colors));
    if (tree.weight(v) > dbar) continue;
    for (int64_t u = 1; u < tree.weight(v); ++u) {
      extra[v].push_back(static_cast<int>(UniformBelow(rng, colors)));
    }
  }
  key[0] = 0;
  return MakeDbarColoring(tree, dbar, key, extra);
}

// Some nondecreasing-extinction order of `set` in which no tuple's out-edge
// lies on its own path or the path of an earlier tuple.
inline bool HasStructuralOrdering(const Instance& instance, const AnchoredSet& set) {
  const int k = static_cast<int>(set.size());
  std::vector<std::vector<VertexId>> paths;
  for (const AnchoredTuple& t : set) paths.push_back(TuplePath(instance, t));
  std::vector<char> used(k, 0);
  std::vector<char> on_path(instance.tree().num_vertices(), 0);
  std::function<bool(int)> search = [&](int placed) {
    if (placed == k) return true;
    int64_t next_ex = INT64_MAX;
    for (int i = 0; i < k; ++i) {
      if (!used[i]) next_ex = std::min(next_ex, instance.taxon(set[i].taxon).extinction_time);
    }
    for (int i = 0; i < k; ++i) {
      if (used[i] || instance.taxon(set[i].taxon).extinction_time != next_ex) continue;
      for (VertexId e : paths[i]) on_path[e] += 1;
      if (!on_path[set[i].edge]) {
        used[i] = 1;
        if (search(placed + 1)) return true;
        used[i] = 0;
      }
      for (VertexId e : paths[i]) on_path[e] -= 1;
    }
    return false;
  };
  return search(0);
}

// Empty when the witness built for `saved` has every required property;
// otherwise a description of the first violation.
inline std::string CheckAnchoredWitness(const Instance& instance, const TaxaSet& saved,
                                        std::mt19937_64& rng) {
  const AnchoredSet set = BuildAnchoredWitness(instance, saved);
  const TaxaSet everything = TaxaSet::Range(instance.num_taxa());
  if (RescuedBy(instance, set) != saved) return "tuples do not cover the lost taxa";
  if (static_cast<int>(set.size()) != instance.num_taxa() - saved.size()) {
    return "one tuple per lost taxon expected";
  }
  std::vector<char> on_path(instance.tree().num_vertices(), 0);
  int64_t path_weight = 0;
  for (const AnchoredTuple& t : set) {
    if (!IsWellFormed(instance, t)) return "malformed tuple";
    for (VertexId e : TuplePath(instance, t)) {
      if (on_path[e]) return "paths share an edge";
      on_path[e] = 1;
      path_weight += instance.tree().weight(e);
    }
  }
  const TaxaSet lost = AnchoredTaxa(set);
  std::vector<VertexId> plus;
  for (VertexId v = 0; v < instance.tree().num_vertices(); ++v) {
    if (on_path[v]) plus.push_back(v);
  }
  if (plus != DeadEdges(instance, lost)) return "path edges differ from the dead edges";
  const int64_t loss = PhylogeneticDiversity(instance, everything) -
                       PhylogeneticDiversity(instance, saved);
  if (path_weight != loss) return "path weight differs from the diversity loss";
  if (!HasStructuralOrdering(instance, set)) return "no valid ordering";
  // 2 * loss colors always suffice for an injective witness coloring.
  if (loss >= 1 && loss <= 7) {
    const DbarColoring coloring = WitnessColoring(instance, set, static_cast<int>(loss), rng);
    if (!CheckColorRespectful(instance, coloring, set)) return "not color-respectful";
  }
  return "";
}

}  // namespace tpd::testing

#endif  // TPD_TESTS_DBAR_WITNESS_H_
