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

#include "tpd/dp_hours.h"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "budget_dp.h"
#include "tpd/error.h"
#include "tpd/feasibility.h"

namespace tpd {
namespace {

using internal::BoxSpace;
using internal::BudgetTreeDp;
using internal::kNoSet;
using internal::SubsetSpace;

void RequireMode(const Instance& instance, Mode mode, const std::string& name) {
  if (instance.mode() != mode) {
    throw Error(ErrorCode::kUnsupportedMode,
                name + " handles " + std::string(ModeName(mode)) + " instances");
  }
}

// Leaf tables depend only on a small key per taxon; share them.
template <typename Key>
class LeafCache {
 public:
  template <typename KeyOf, typename Build>
  LeafCache(int n, KeyOf key_of, Build build) : key_(n) {
    for (TaxonId x = 0; x < n; ++x) {
      key_[x] = key_of(x);
      if (!tables_.count(key_[x])) tables_.emplace(key_[x], build(x));
    }
  }

  const std::vector<uint8_t>& operator()(TaxonId x) const { return tables_.at(key_[x]); }

 private:
  std::vector<Key> key_;
  std::map<Key, std::vector<uint8_t>> tables_;
};

SolveOutcome Finish(const Instance& instance, const DerivedIndex& index,
                    int64_t value, TaxaSet saved, std::optional<Schedule> schedule,
                    const std::string& name) {
  SolveOutcome out = value != kNoSet && value >= index.target
                         ? MakeYes(instance, index, std::move(saved),
                                   std::move(schedule), name)
                         : MakeNo(name);
  out.optimum = std::max<int64_t>(0, value);
  return out;
}

TaxaSet Leaves(const std::vector<std::pair<TaxonId, uint64_t>>& picked) {
  std::vector<TaxonId> ids;
  for (const auto& [x, budget] : picked) ids.push_back(x);
  return TaxaSet(std::move(ids));
}

}  // namespace

SolveOutcome SolveTimePdTeamVectors(const Instance& instance,
                                    const StateLimits& limits) {
  const std::string name = "hours-teams";
  RequireMode(instance, Mode::kCollaborative, name);
  const DerivedIndex index = BuildDerivedIndex(instance);
  if (auto trivial = TrivialOutcome(instance, index, name)) return *trivial;

  std::vector<int64_t> caps(index.max_ex, 0);
  for (const TeamWindow& t : instance.teams()) {
    for (int64_t j = t.start + 1; j <= std::min(t.end, index.max_ex); ++j) ++caps[j - 1];
  }
  const BoxSpace space(caps);
  if (space.size() > limits.max_states) {
    throw Error(ErrorCode::kStateSpaceTooLarge, name + ": too many team-count vectors");
  }
  std::vector<int64_t> digits;
  LeafCache<std::pair<int64_t, int64_t>> leaves(
      instance.num_taxa(),
      [&](TaxonId x) {
        return std::make_pair(instance.taxon(x).extinction_time,
                              instance.taxon(x).rescue_length);
      },
      [&](TaxonId x) {
        const TaxonInfo& info = instance.taxon(x);
        std::vector<uint8_t> table(space.size());
        for (uint64_t a = 0; a < space.size(); ++a) {
          space.Decode(a, &digits);
          int64_t hours = 0;
          for (int64_t j = 0; j < info.extinction_time; ++j) hours += digits[j];
          table[a] = hours >= info.rescue_length;
        }
        return table;
      });
  BudgetTreeDp<BoxSpace> dp(instance, space, std::cref(leaves), limits);
  dp.Run();
  const int64_t value = dp.Value(space.root());
  return Finish(instance, index, value, Leaves(dp.Extract(space.root())),
                std::nullopt, name);
}

SolveOutcome SolveTimePdHourVectors(const Instance& instance,
                                    const StateLimits& limits) {
  const std::string name = "hours-budget";
  RequireMode(instance, Mode::kCollaborative, name);
  const DerivedIndex index = BuildDerivedIndex(instance);
  if (auto trivial = TrivialOutcome(instance, index, name)) return *trivial;

  const BoxSpace space(index.capacity);
  if (space.size() > limits.max_states) {
    throw Error(ErrorCode::kStateSpaceTooLarge, name + ": too many hour vectors");
  }
  std::vector<int64_t> digits;
  LeafCache<std::pair<int, int64_t>> leaves(
      instance.num_taxa(),
      [&](TaxonId x) {
        return std::make_pair(index.class_of[x], index.rescue_length[x]);
      },
      [&](TaxonId x) {
        std::vector<uint8_t> table(space.size());
        for (uint64_t a = 0; a < space.size(); ++a) {
          space.Decode(a, &digits);
          bool ok = true;
          for (int j = index.class_of[x]; j < index.num_classes && ok; ++j) {
            ok = digits[j] >= index.rescue_length[x];
          }
          table[a] = ok;
        }
        return table;
      });
  BudgetTreeDp<BoxSpace> dp(instance, space, std::cref(leaves), limits);
  dp.Run();
  const int64_t value = dp.Value(space.root());
  return Finish(instance, index, value, Leaves(dp.Extract(space.root())),
                std::nullopt, name);
}

SolveOutcome SolveSTimePdTeamSubsets(const Instance& instance,
                                     const StateLimits& limits) {
  const std::string name = "hours-subsets";
  RequireMode(instance, Mode::kStrict, name);
  const DerivedIndex index = BuildDerivedIndex(instance);
  if (auto trivial = TrivialOutcome(instance, index, name)) return *trivial;

  // One universe element per (team, slot) pair at or before max_ex.
  const auto teams = instance.teams();
  std::vector<std::vector<int>> bit_of(teams.size(),
                                       std::vector<int>(index.max_ex + 1, -1));
  std::vector<std::pair<int, int64_t>> pair_of;
  for (int64_t j = 1; j <= index.max_ex; ++j) {
    for (size_t i = 0; i < teams.size(); ++i) {
      if (teams[i].Covers(j)) {
        bit_of[i][j] = static_cast<int>(pair_of.size());
        pair_of.emplace_back(static_cast<int>(i), j);
      }
    }
  }
  if (pair_of.size() > 40) {
    throw Error(ErrorCode::kStateSpaceTooLarge, name + ": too many working pairs");
  }
  const SubsetSpace space(static_cast<int>(pair_of.size()));
  if (space.size() > limits.max_states) {
    throw Error(ErrorCode::kStateSpaceTooLarge, name + ": too many team subsets");
  }
  // Placement (team, first slot) of a run for x inside budget a, if any.
  auto place = [&](TaxonId x, uint64_t a) -> std::optional<std::pair<int, int64_t>> {
    const TaxonInfo& info = instance.taxon(x);
    const int64_t last_start = std::min(info.extinction_time, index.max_ex) -
                               info.rescue_length;
    for (size_t i = 0; i < teams.size(); ++i) {
      for (int64_t s = 0; s <= last_start; ++s) {
        bool ok = true;
        for (int64_t j = s + 1; j <= s + info.rescue_length && ok; ++j) {
          ok = bit_of[i][j] >= 0 && ((a >> bit_of[i][j]) & 1);
        }
        if (ok) return std::make_pair(static_cast<int>(i), s + 1);
      }
    }
    return std::nullopt;
  };
  LeafCache<std::pair<int64_t, int64_t>> leaves(
      instance.num_taxa(),
      [&](TaxonId x) {
        return std::make_pair(instance.taxon(x).extinction_time,
                              instance.taxon(x).rescue_length);
      },
      [&](TaxonId x) {
        std::vector<uint8_t> table(space.size());
        for (uint64_t a = 0; a < space.size(); ++a) table[a] = place(x, a).has_value();
        return table;
      });
  BudgetTreeDp<SubsetSpace> dp(instance, space, std::cref(leaves), limits);
  dp.Run();
  const int64_t value = dp.Value(space.root());
  const auto picked = dp.Extract(space.root());
  Schedule schedule(Mode::kStrict, teams);
  for (const auto& [x, budget] : picked) {
    const auto spot = place(x, budget);
    for (int64_t k = 0; k < instance.taxon(x).rescue_length; ++k) {
      schedule.Assign(spot->first, spot->second + k, x);
    }
  }
  schedule.set_saved(Leaves(picked));
  return Finish(instance, index, value, Leaves(picked), std::move(schedule), name);
}

}  // namespace tpd
