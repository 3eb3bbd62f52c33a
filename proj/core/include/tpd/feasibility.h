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

// Schedules over the (team, timeslot) pairs and the feasibility tests that
// decide whether a taxa set can be rescued in time.

#ifndef TPD_FEASIBILITY_H_
#define TPD_FEASIBILITY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tpd/model.h"

namespace tpd {

// Assignment of every working pair (team i, slot j) with s_i < j <= e_i to a
// taxon or to kNone, together with the set the schedule claims to rescue.
class Schedule {
 public:
  Schedule() = default;
  Schedule(Mode mode, std::span<const TeamWindow> teams);

  Mode mode() const { return mode_; }
  int num_teams() const { return static_cast<int>(windows_.size()); }
  std::span<const TeamWindow> windows() const { return windows_; }
  const TeamWindow& window(int team) const { return windows_[team]; }

  // Slots are absolute 1-based timeslots. Throws kDomainMismatch for pairs
  // outside the team's window.
  TaxonId at(int team, int64_t slot) const;
  void Assign(int team, int64_t slot, TaxonId taxon);

  const TaxaSet& saved() const { return saved_; }
  void set_saved(TaxaSet saved) { saved_ = std::move(saved); }

  bool operator==(const Schedule&) const = default;

 private:
  Mode mode_ = Mode::kCollaborative;
  std::vector<TeamWindow> windows_;
  std::vector<std::vector<TaxonId>> slots_;
  TaxaSet saved_;
};

enum class ViolationKind {
  kInsufficientHours,
  kPostDeadline,
  kStrictnessViolation,
  kNotInSavedSet,
};

struct Violation {
  ViolationKind kind;
  TaxonId taxon = kNone;
  int team = kNone;
  int64_t slot = 0;

  bool operator==(const Violation&) const = default;
};

struct TaxonHours {
  TaxonId taxon = kNone;
  int64_t assigned = 0;
  int64_t required = 0;
};

struct VerificationReport {
  bool ok = true;
  std::vector<TaxonHours> hours;  // one entry per saved taxon
  std::vector<Violation> violations;

  std::string Describe(const Instance& instance) const;
};

// Prefix condition: for every class j the saved taxa that die by ex_j need at
// most the hours the teams offer by ex_j.
bool CollaborativeFeasible(const DerivedIndex& index, const TaxaSet& set);

// Greedy fill of pairs ordered by (slot, team) in canonical taxon order.
// Throws kInfeasibleSet.
Schedule BuildCollaborativeSchedule(const Instance& instance,
                                    const DerivedIndex& index,
                                    const TaxaSet& set);

// Earliest-deadline-first check for a single team; `taxa` is indexed by id.
bool SingleTeamFeasible(const TeamWindow& team, std::span<const TaxonInfo> taxa,
                        const TaxaSet& set);

// Team by team, each takes the longest prefix of the remaining ordering that
// it can run back to back from its window start, every run ending by the
// taxon's extinction time. Succeeds when the ordering is exhausted.
std::optional<Schedule> StrictFeasibleGivenOrdering(
    const Instance& instance, std::span<const TaxonId> ordering);

// Tries orderings of `set` in lexicographic order. Throws kSetTooLarge above
// `max_set_size` taxa.
std::optional<Schedule> StrictFeasible(const Instance& instance,
                                       const TaxaSet& set,
                                       int max_set_size = 10);

// Runs each team's share back to back in deadline order. Throws
// kInfeasibleSet if a share does not fit.
Schedule BuildStrictSchedule(const Instance& instance,
                             std::span<const TaxaSet> per_team);

// Checks the schedule against the instance under the schedule's own mode.
// Throws kDomainMismatch if its team windows differ from the instance's.
VerificationReport VerifySchedule(const Instance& instance,
                                  const Schedule& schedule);

}  // namespace tpd

#endif  // TPD_FEASIBILITY_H_
