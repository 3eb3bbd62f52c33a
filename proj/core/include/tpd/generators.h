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

// Seeded random instances and the subset-sum reduction used for hardness
// fixtures.

#ifndef TPD_GENERATORS_H_
#define TPD_GENERATORS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "tpd/model.h"

namespace tpd {

enum class TreeShape { kStar, kCaterpillar, kRandomBinary, kRandomMultifurcating };

std::string_view TreeShapeName(TreeShape shape);
std::optional<TreeShape> ParseTreeShape(std::string_view name);

struct GeneratorParams {
  int num_taxa = 6;
  int num_teams = 2;
  int64_t max_ex = 8;
  int64_t max_ell = 4;
  int64_t max_omega = 5;
  TreeShape shape = TreeShape::kRandomBinary;
  Mode mode = Mode::kCollaborative;
  // Chance that a taxon's extinction time is drawn at or above its rescue
  // length.
  double savable_probability = 0.8;
  // Defaults to ceil(PD(X) / 2).
  std::optional<int64_t> target;
};

// Taxa are named x1..xn. Throws kBadParams on out-of-range parameters.
Instance GenerateRandomInstance(const GeneratorParams& params, uint64_t seed);

// Star with one leaf per value z, edge weight and rescue length z + q, all
// dying at target + k*q, and one team working slots 1..target + k*q. The
// answer is yes iff some k of the values sum to exactly `target`. `q`
// defaults to max(sum(values), target) + 1 and must exceed both.
Instance ReduceSubsetSum(std::span<const int64_t> values, int k, int64_t target,
                         std::optional<int64_t> q = std::nullopt);

}  // namespace tpd

#endif  // TPD_GENERATORS_H_
