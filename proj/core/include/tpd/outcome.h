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

#ifndef TPD_OUTCOME_H_
#define TPD_OUTCOME_H_

#include <cstdint>
#include <optional>
#include <string>

#include "tpd/feasibility.h"
#include "tpd/model.h"

namespace tpd {

struct SolveOutcome {
  bool yes = false;
  // The rescued set on a yes answer; empty otherwise.
  TaxaSet saved;
  std::optional<Schedule> schedule;
  int64_t pd = 0;
  // Largest achievable diversity, for algorithms that compute it exactly.
  std::optional<int64_t> optimum;
  std::string algorithm;
  // Randomized algorithms only.
  uint64_t trials = 0;
  uint64_t planned_trials = 0;
  uint64_t seed = 0;
  double delta = 0.0;
};

// Re-verifies a yes answer: the schedule is valid for the instance's mode,
// rescues exactly `saved`, and reaches the target. Throws kInternal.
void CertifyOutcome(const Instance& instance, const SolveOutcome& outcome);

// Builds a certified yes outcome. Without a schedule, the collaborative greedy
// is used (collaborative mode only).
SolveOutcome MakeYes(const Instance& instance, const DerivedIndex& index,
                     TaxaSet saved, std::optional<Schedule> schedule,
                     std::string algorithm);

SolveOutcome MakeNo(std::string algorithm);

// Handles the zero-target and unreachable-target cases shared by all solvers.
std::optional<SolveOutcome> TrivialOutcome(const Instance& instance,
                                           const DerivedIndex& index,
                                           const std::string& algorithm);

}  // namespace tpd

#endif  // TPD_OUTCOME_H_
