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

// Exact tree dynamic programs whose states are budget vectors handed down
// the tree. They are polynomial when the number of timeslots or extinction
// classes is small and serve as exact cross-checks for the randomized
// solvers.

#ifndef TPD_DP_HOURS_H_
#define TPD_DP_HOURS_H_

#include <cstdint>

#include "tpd/model.h"
#include "tpd/outcome.h"

namespace tpd {

struct StateLimits {
  uint64_t max_states = 10'000'000;         // budget vectors per vertex
  uint64_t max_transitions = 400'000'000;   // total split work
  uint64_t max_stored_values = 60'000'000;  // table entries kept for witnesses
};

// Budget: number of teams at work in each timeslot 1..max_ex. A leaf is
// rescued when its timeslots up to its extinction time hold enough
// person-hours. Collaborative mode.
SolveOutcome SolveTimePdTeamVectors(const Instance& instance,
                                    const StateLimits& limits = {});

// Budget: remaining hours per extinction class, starting from the class
// capacities. A leaf uses its rescue length in its own class and every later
// one. Collaborative mode.
SolveOutcome SolveTimePdHourVectors(const Instance& instance,
                                    const StateLimits& limits = {});

// Budget: the set of available teams in each timeslot. A leaf is rescued
// when one team is available for a run of consecutive slots as long as its
// rescue length that ends by its extinction time. Strict mode.
SolveOutcome SolveSTimePdTeamSubsets(const Instance& instance,
                                     const StateLimits& limits = {});

}  // namespace tpd

#endif  // TPD_DP_HOURS_H_
