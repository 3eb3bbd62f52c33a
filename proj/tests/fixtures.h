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


// Hand-built instances shared by the unit and acceptance tests.

#ifndef TPD_TESTS_FIXTURES_H_
#define TPD_TESTS_FIXTURES_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tpd/generators.h"
#include "tpd/io.h"
#include "tpd/model.h"
#include "tpd/rng.h"

namespace tpd::testing {

inline std::map<std::string, TaxonInfo> Taxa(const std::vector<int64_t>& ell,
                                              const std::vector<int64_t>& ex) {
  std::map<std::string, TaxonInfo> taxa;
  for (size_t i = 0; i < ell.size(); ++i) {
    taxa["x" + std::to_string(i + 1)] = TaxonInfo{ell[i], ex[i]};
  }
  return taxa;
}

// Star over x1..xn with the given edge weights.
inline PhyloTree StarTree(const std::vector<int64_t>& weights) {
  TreeSpec spec;
  spec.parent.push_back(kNone);
  spec.weight.push_back(0);
  spec.label.push_back("");
  for (size_t i = 0; i < weights.size(); ++i) {
    spec.parent.push_back(0);
    spec.weight.push_back(weights[i]);
    spec.label.push_back("x" + std::to_string(i + 1));
  }
  return PhyloTree::Build(spec);
}

inline Instance StarInstance(const std::vector<int64_t>& weights,
                             const std::vector<int64_t>& ell,
                             const std::vector<int64_t>& ex,
                             std::vector<TeamWindow> teams, int64_t target,
                             Mode mode = Mode::kCollaborative) {
  return Instance::Create(StarTree(weights), Taxa(ell, ex), std::move(teams),
                          target, mode);
}

// Six taxa, four teams; the first three classes need 19, 34 and 52 hours.
inline Instance FourTeamStar(int64_t ell_x1 = 10) {
  return StarInstance({1, 1, 1, 1, 1, 1}, {ell_x1, 9, 13, 8, 7, 5},
                      {7, 7, 18, 12, 12, 18}, {{0, 17}, {2, 13}, {3, 15}, {4, 18}},
                      6);
}

// Three teams offering 10, 19 and 39 hours against demands of 8, 19 and 39.
inline Instance ThreeTeamStar() {
  return StarInstance({1, 1, 1, 1, 1, 1}, {8, 4, 7, 8, 6, 6},
                      {4, 7, 7, 15, 15, 15}, {{2, 15}, {0, 15}, {0, 11}}, 6);
}

// Root v0 with children v1 (x1, x2), v2 (x3, x4), v3 (x5, x6). Vertex i is
// the head of edge e_i: e1..e3 leave the root, e4..e9 reach x1..x6.
inline Instance SixLeafTree(std::vector<TeamWindow> teams = {{0, 30}}) {
  const PhyloTree tree = ParseNewick(
      "((x1:2,x2:3)v1:3,(x3:2,x4:7)v2:3,(x5:1,x6:3)v3:7)v0;");
  return Instance::Create(tree,
                          Taxa({10, 13, 9, 7, 9, 12}, {15, 30, 25, 15, 25, 25}),
                          std::move(teams), 25, Mode::kCollaborative);
}

// Key colors and extra colors of the six-leaf tree, 0-based, by head vertex.
inline std::vector<int> SixLeafTreeKeys() {
  return {0, 1, 8, 11, 9, 5, 2, 7, 3, 4};
}
inline std::vector<std::vector<int>> SixLeafTreeExtras() {
  return {{}, {0, 6}, {1, 2}, {}, {8}, {3, 10}, {6}, {}, {}, {2, 7}};
}

// Subset-sum reduction of {1,2,3}, k = 2, goal 5, q = 7: a star with weights
// 8, 9, 10, one team (0, 19), D = 19.
inline Instance SubsetSumInstance() {
  const std::vector<int64_t> values = {1, 2, 3};
  return ReduceSubsetSum(values, 2, 5, 7);
}

// Small random instance for property tests; shapes and sizes come from the
// seed as well.
struct RandomShape {
  int min_taxa = 2;
  int max_taxa = 6;
  int max_teams = 3;
  int64_t max_ex = 8;
  int64_t max_ell = 4;
  int64_t max_omega = 5;
  Mode mode = Mode::kCollaborative;
  bool binary_only = false;
  bool star_only = false;
};

inline Instance RandomInstance(const RandomShape& shape, uint64_t seed) {
  std::mt19937_64 rng(SplitMix64(seed ^ 0x9e3779b97f4a7c15ULL));
  GeneratorParams p;
  p.num_taxa = shape.min_taxa +
               static_cast<int>(UniformBelow(rng, shape.max_taxa - shape.min_taxa + 1));
  p.num_teams = 1 + static_cast<int>(UniformBelow(rng, shape.max_teams));
  p.max_ex = shape.max_ex;
  p.max_ell = shape.max_ell;
  p.max_omega = shape.max_omega;
  p.mode = shape.mode;
  const TreeShape shapes[] = {TreeShape::kStar, TreeShape::kCaterpillar,
                              TreeShape::kRandomBinary,
                              TreeShape::kRandomMultifurcating};
  if (shape.star_only) {
    p.shape = TreeShape::kStar;
  } else if (shape.binary_only) {
    p.shape = UniformBelow(rng, 2) == 0 ? TreeShape::kCaterpillar
                                        : TreeShape::kRandomBinary;
  } else {
    p.shape = shapes[UniformBelow(rng, 4)];
  }
  Instance instance = GenerateRandomInstance(p, seed);
  const int64_t pd = instance.tree().total_weight();
  return instance.WithTarget(1 + static_cast<int64_t>(UniformBelow(rng, pd)));
}

}  // namespace tpd::testing

#endif  // TPD_TESTS_FIXTURES_H_
