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

// Exhaustive reference solvers, used to cross-check everything else on small
// inputs.

#ifndef TPD_ORACLE_H_
#define TPD_ORACLE_H_

#include <cstdint>

#include "tpd/model.h"
#include "tpd/outcome.h"

namespace tpd {

// Enumerates every subset of the taxa. Among feasible sets the optimum
// maximizes diversity, then minimizes total rescue length, then is
// lexicographically smallest. The answer is yes iff it reaches the target;
// `optimum` always holds its diversity. Collaborative mode only.
// Throws kInstanceTooLarge above `max_taxa`.
SolveOutcome BruteForceTimePd(const Instance& instance, int max_taxa = 20);

// Same, with strict feasibility decided by trying every ordering.
SolveOutcome BruteForceSTimePd(const Instance& instance, int max_taxa = 8);

// Searches raw assignments of the working pairs to `set` or to nobody; true
// iff one rescues every taxon of `set` (single consecutive runs in strict
// mode). Throws kSearchSpaceTooLarge when (|set|+1)^(#pairs) exceeds
// `max_space`.
bool ExhaustiveScheduleSearch(const Instance& instance, const TaxaSet& set,
                              uint64_t max_space = 10'000'000);

}  // namespace tpd

#endif  // TPD_ORACLE_H_
