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

#include "tpd/oracle.h"

#include <algorithm>
#include <bit>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tpd/error.h"
#include "tpd/feasibility.h"

namespace tpd {
namespace {

struct Candidate {
  uint64_t mask;
  int64_t pd;
  int64_t length;
};

// Preference order of the oracle: more diversity, then less work, then the
// lexicographically smaller id list.
bool Preferred(const Candidate& a, const Candidate& b) {
  if (a.pd != b.pd) return a.pd > b.pd;
  if (a.length != b.length) return a.length < b.length;
  return TaxaSet::FromMask(a.mask) < TaxaSet::FromMask(b.mask);
}

int64_t MaskLength(const DerivedIndex& index, uint64_t mask) {
  int64_t total = 0;
  for (uint64_t m = mask; m != 0; m &= m - 1) {
    total += index.rescue_length[std::countr_zero(m)];
  }
  return total;
}

void CheckSize(const Instance& instance, int max_taxa) {
  if (instance.num_taxa() > max_taxa) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "brute force is limited to " + std::to_string(max_taxa) + " taxa");
  }
}

}  // namespace

SolveOutcome BruteForceTimePd(const Instance& instance, int max_taxa) {
  constexpr const char* kName = "brute";
  if (instance.mode() != Mode::kCollaborative) {
    throw Error(ErrorCode::kUnsupportedMode, "use the strict brute force");
  }
  CheckSize(instance, std::min(max_taxa, 62));
  const DerivedIndex index = BuildDerivedIndex(instance);
  const DiversityEvaluator diversity(instance);
  const int n = instance.num_taxa();

  // Class boundaries as masks make the prefix test a handful of popcounts.
  std::vector<uint64_t> prefix_mask(index.num_classes);
  for (int j = 0; j < index.num_classes; ++j) {
    prefix_mask[j] = (uint64_t{1} << index.class_end[j]) - 1;
  }
  Candidate best{0, 0, 0};
  for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
    bool feasible = true;
    for (int j = 0; j < index.num_classes && feasible; ++j) {
      feasible = MaskLength(index, mask & prefix_mask[j]) <= index.capacity[j];
    }
    if (!feasible) continue;
    const Candidate c{mask, diversity(mask), MaskLength(index, mask)};
    if (Preferred(c, best)) best = c;
  }
  SolveOutcome out;
  if (index.target == 0) {
    // The empty set is the canonical witness for a zero target.
    out = *TrivialOutcome(instance, index, kName);
  } else if (best.pd >= index.target) {
    out = MakeYes(instance, index, TaxaSet::FromMask(best.mask), std::nullopt, kName);
  } else {
    out = MakeNo(kName);
  }
  out.optimum = best.pd;
  return out;
}

SolveOutcome BruteForceSTimePd(const Instance& instance, int max_taxa) {
  constexpr const char* kName = "brute-strict";
  if (instance.mode() != Mode::kStrict) {
    throw Error(ErrorCode::kUnsupportedMode, "use the collaborative brute force");
  }
  CheckSize(instance, std::min(max_taxa, 10));
  const DerivedIndex index = BuildDerivedIndex(instance);
  const DiversityEvaluator diversity(instance);
  const int n = instance.num_taxa();
  std::vector<Candidate> candidates;
  candidates.reserve(size_t{1} << n);
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    candidates.push_back({mask, diversity(mask), MaskLength(index, mask)});
  }
  std::sort(candidates.begin(), candidates.end(), Preferred);
  for (const Candidate& c : candidates) {
    const TaxaSet set = TaxaSet::FromMask(c.mask);
    std::optional<Schedule> schedule = StrictFeasible(instance, set);
    if (!schedule) continue;
    SolveOutcome out;
    if (index.target == 0) {
      out = *TrivialOutcome(instance, index, kName);
    } else if (c.pd >= index.target) {
      out = MakeYes(instance, index, set, std::move(schedule), kName);
    } else {
      out = MakeNo(kName);
    }
    out.optimum = c.pd;
    return out;
  }
  throw Error(ErrorCode::kInternal, "the empty set is always feasible");
}

bool ExhaustiveScheduleSearch(const Instance& instance, const TaxaSet& set,
                              uint64_t max_space) {
  struct Pair {
    int team;
    int64_t slot;
  };
  std::vector<Pair> pairs;
  const auto teams = instance.teams();
  for (int i = 0; i < static_cast<int>(teams.size()); ++i) {
    for (int64_t j = teams[i].start + 1; j <= teams[i].end; ++j) {
      pairs.push_back({i, j});
    }
  }
  uint64_t space = 1;
  for (size_t k = 0; k < pairs.size(); ++k) {
    if (space > max_space / (set.size() + 1)) {
      throw Error(ErrorCode::kSearchSpaceTooLarge,
                  "raw assignment space exceeds " + std::to_string(max_space));
    }
    space *= set.size() + 1;
  }

  const std::vector<TaxonId> taxa(set.begin(), set.end());
  const int a = static_cast<int>(taxa.size());
  const int p = static_cast<int>(pairs.size());
  const bool strict = instance.mode() == Mode::kStrict;
  // usable[t][k]: pairs at index >= k that may still work on taxon t.
  std::vector<std::vector<int>> usable(a, std::vector<int>(p + 1, 0));
  for (int t = 0; t < a; ++t) {
    const int64_t ex = instance.taxon(taxa[t]).extinction_time;
    for (int k = p - 1; k >= 0; --k) {
      usable[t][k] = usable[t][k + 1] + (pairs[k].slot <= ex ? 1 : 0);
    }
  }
  std::vector<int64_t> need(a);
  int64_t total_need = 0;
  for (int t = 0; t < a; ++t) {
    need[t] = instance.taxon(taxa[t]).rescue_length;
    total_need += need[t];
  }
  std::vector<int> team_of(a, kNone);
  std::vector<int64_t> last_slot(a, 0);
  std::vector<int> count(a, 0);

  auto search = [&](auto&& self, int k) -> bool {
    if (total_need == 0) return true;  // remaining pairs can stay idle
    if (k == p || total_need > p - k) return false;
    for (int t = 0; t < a; ++t) {
      if (need[t] > usable[t][k]) return false;
    }
    const Pair& pair = pairs[k];
    for (int t = 0; t < a; ++t) {
      if (pair.slot > instance.taxon(taxa[t]).extinction_time) continue;
      if (strict && count[t] > 0 &&
          (team_of[t] != pair.team || last_slot[t] != pair.slot - 1)) {
        continue;
      }
      const int saved_team = team_of[t];
      const int64_t saved_last = last_slot[t];
      const bool useful = need[t] > 0;
      team_of[t] = pair.team;
      last_slot[t] = pair.slot;
      ++count[t];
      if (useful) {
        --need[t];
        --total_need;
      }
      const bool found = self(self, k + 1);
      if (useful) {
        ++need[t];
        ++total_need;
      }
      --count[t];
      team_of[t] = saved_team;
      last_slot[t] = saved_last;
      if (found) return true;
    }
    return self(self, k + 1);  // leave the pair idle
  };
  return search(search, 0);
}

}  // namespace tpd
