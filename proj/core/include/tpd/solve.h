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

// Algorithm registry and automatic selection.

#ifndef TPD_SOLVE_H_
#define TPD_SOLVE_H_

#include <optional>
#include <span>
#include <string_view>

#include "tpd/dp_hours.h"
#include "tpd/fpt_d.h"
#include "tpd/model.h"
#include "tpd/outcome.h"

namespace tpd {

enum class Algorithm {
  kAuto,
  kBrute,
  kFptD,
  kFptDbar,
  kHoursTeams,
  kHoursBudget,
  kHoursSubsets,
  kXpCounts,
  kStar,
};

std::string_view AlgorithmName(Algorithm algorithm);
std::optional<Algorithm> ParseAlgorithm(std::string_view name);
std::span<const Algorithm> AllAlgorithms();  // kAuto excluded
bool SupportsMode(Algorithm algorithm, Mode mode);
bool IsRandomized(Algorithm algorithm);

struct SolveOptions {
  Algorithm algorithm = Algorithm::kAuto;
  RandomizedOptions randomized;
  StateLimits limits;
  // Selection thresholds used by kAuto.
  int auto_max_dbar = 4;
  int auto_max_d = 10;
  int brute_max_taxa = 20;
  int brute_strict_max_taxa = 8;
};

// Runs one algorithm, or picks the first applicable one in the order
// trivial, star, fpt-dbar, fpt-d, hours-budget, hours-teams, xp-counts,
// brute (strict: trivial, fpt-d, hours-subsets, brute). Auto never retries
// after a randomized "no". When every candidate exceeds its guard, throws
// the last guard error.
SolveOutcome Solve(const Instance& instance, const SolveOptions& options = {});

}  // namespace tpd

#endif  // TPD_SOLVE_H_
