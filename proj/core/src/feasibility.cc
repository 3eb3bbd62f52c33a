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

#include "tpd/feasibility.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "tpd/error.h"

namespace tpd {

Schedule::Schedule(Mode mode, std::span<const TeamWindow> teams)
    : mode_(mode), windows_(teams.begin(), teams.end()) {
  slots_.reserve(windows_.size());
  for (const TeamWindow& w : windows_) {
    slots_.emplace_back(static_cast<size_t>(w.end - w.start), kNone);
  }
}

TaxonId Schedule::at(int team, int64_t slot) const {
  if (team < 0 || team >= num_teams() || !windows_[team].Covers(slot)) {
    throw Error(ErrorCode::kDomainMismatch, "pair outside the working hours");
  }
  return slots_[team][slot - windows_[team].start - 1];
}

void Schedule::Assign(int team, int64_t slot, TaxonId taxon) {
  if (team < 0 || team >= num_teams() || !windows_[team].Covers(slot)) {
    throw Error(ErrorCode::kDomainMismatch,
                "pair (team " + std::to_string(team) + ", slot " +
                    std::to_string(slot) + ") outside the working hours");
  }
  slots_[team][slot - windows_[team].start - 1] = taxon;
}

std::string VerificationReport::Describe(const Instance& instance) const {
  std::ostringstream out;
  out << (ok ? "valid" : "invalid") << "\n";
  for (const TaxonHours& h : hours) {
    out << "  " << instance.taxon_name(h.taxon) << ": " << h.assigned << "/"
        << h.required << " hours\n";
  }
  for (const Violation& v : violations) {
    const std::string name =
        v.taxon >= 0 && v.taxon < instance.num_taxa()
            ? instance.taxon_name(v.taxon)
            : "#" + std::to_string(v.taxon);
    switch (v.kind) {
      case ViolationKind::kInsufficientHours:
        out << "  insufficient hours for " << name << "\n";
        break;
      case ViolationKind::kPostDeadline:
        out << "  " << name << " worked on after extinction (team " << v.team
            << ", slot " << v.slot << ")\n";
        break;
      case ViolationKind::kStrictnessViolation:
        out << "  " << name << " is not one consecutive single-team run\n";
        break;
      case ViolationKind::kNotInSavedSet:
        out << "  " << name << " is assigned but not in the saved set (team "
            << v.team << ", slot " << v.slot << ")\n";
        break;
    }
  }
  return out.str();
}

bool CollaborativeFeasible(const DerivedIndex& index, const TaxaSet& set) {
  std::vector<int64_t> per_class(index.num_classes, 0);
  for (TaxonId x : set) per_class[index.class_of[x]] += index.rescue_length[x];
  int64_t running = 0;
  for (int j = 0; j < index.num_classes; ++j) {
    running += per_class[j];
    if (running > index.capacity[j]) return false;
  }
  return true;
}

Schedule BuildCollaborativeSchedule(const Instance& instance,
                                    const DerivedIndex& index,
                                    const TaxaSet& set) {
  if (!CollaborativeFeasible(index, set)) {
    throw Error(ErrorCode::kInfeasibleSet, "set violates the prefix condition");
  }
  std::vector<std::pair<int64_t, int>> pairs;  // (slot, team)
  const auto teams = instance.teams();
  for (int i = 0; i < static_cast<int>(teams.size()); ++i) {
    for (int64_t j = teams[i].start + 1; j <= teams[i].end; ++j) {
      pairs.emplace_back(j, i);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  Schedule schedule(Mode::kCollaborative, teams);
  size_t next = 0;
  for (TaxonId x : set) {  // canonical order is (extinction, label)
    for (int64_t k = 0; k < index.rescue_length[x]; ++k, ++next) {
      if (next >= pairs.size() ||
          pairs[next].first > instance.taxon(x).extinction_time) {
        throw Error(ErrorCode::kInfeasibleSet, "greedy fill ran past a deadline");
      }
      schedule.Assign(pairs[next].second, pairs[next].first, x);
    }
  }
  schedule.set_saved(set);
  return schedule;
}

bool SingleTeamFeasible(const TeamWindow& team, std::span<const TaxonInfo> taxa,
                        const TaxaSet& set) {
  std::vector<TaxonId> order(set.begin(), set.end());
  std::stable_sort(order.begin(), order.end(), [&](TaxonId a, TaxonId b) {
    return taxa[a].extinction_time < taxa[b].extinction_time;
  });
  int64_t cursor = team.start;
  for (TaxonId x : order) {
    cursor += taxa[x].rescue_length;
    if (cursor > std::min(team.end, taxa[x].extinction_time)) return false;
  }
  return true;
}

std::optional<Schedule> StrictFeasibleGivenOrdering(
    const Instance& instance, std::span<const TaxonId> ordering) {
  const auto teams = instance.teams();
  Schedule schedule(Mode::kStrict, teams);
  size_t pos = 0;
  for (int i = 0; i < static_cast<int>(teams.size()) && pos < ordering.size();
       ++i) {
    int64_t cursor = teams[i].start;
    while (pos < ordering.size()) {
      const TaxonInfo& info = instance.taxon(ordering[pos]);
      const int64_t finish = cursor + info.rescue_length;
      if (finish > std::min(teams[i].end, info.extinction_time)) break;
      for (int64_t j = cursor + 1; j <= finish; ++j) {
        schedule.Assign(i, j, ordering[pos]);
      }
      cursor = finish;
      ++pos;
    }
  }
  if (pos != ordering.size()) return std::nullopt;
  schedule.set_saved(TaxaSet(std::vector<TaxonId>(ordering.begin(), ordering.end())));
  return schedule;
}

std::optional<Schedule> StrictFeasible(const Instance& instance,
                                       const TaxaSet& set, int max_set_size) {
  if (set.size() > max_set_size) {
    throw Error(ErrorCode::kSetTooLarge,
                "ordering enumeration is limited to " +
                    std::to_string(max_set_size) + " taxa");
  }
  std::vector<TaxonId> ordering(set.begin(), set.end());
  do {
    if (auto schedule = StrictFeasibleGivenOrdering(instance, ordering)) {
      return schedule;
    }
  } while (std::next_permutation(ordering.begin(), ordering.end()));
  return std::nullopt;
}

Schedule BuildStrictSchedule(const Instance& instance,
                             std::span<const TaxaSet> per_team) {
  const auto teams = instance.teams();
  if (per_team.size() != teams.size()) {
    throw Error(ErrorCode::kInfeasibleSet, "one share per team is required");
  }
  Schedule schedule(Mode::kStrict, teams);
  std::vector<TaxonId> all;
  for (int i = 0; i < static_cast<int>(teams.size()); ++i) {
    int64_t cursor = teams[i].start;
    for (TaxonId x : per_team[i]) {  // canonical order is deadline order
      const TaxonInfo& info = instance.taxon(x);
      const int64_t finish = cursor + info.rescue_length;
      if (finish > std::min(teams[i].end, info.extinction_time)) {
        throw Error(ErrorCode::kInfeasibleSet,
                    "share of team " + std::to_string(i) + " does not fit");
      }
      for (int64_t j = cursor + 1; j <= finish; ++j) schedule.Assign(i, j, x);
      cursor = finish;
      all.push_back(x);
    }
  }
  TaxaSet saved(all);
  if (saved.size() != static_cast<int>(all.size())) {
    throw Error(ErrorCode::kInfeasibleSet, "team shares overlap");
  }
  schedule.set_saved(std::move(saved));
  return schedule;
}

VerificationReport VerifySchedule(const Instance& instance,
                                  const Schedule& schedule) {
  const auto teams = instance.teams();
  if (!std::equal(teams.begin(), teams.end(), schedule.windows().begin(),
                  schedule.windows().end())) {
    throw Error(ErrorCode::kDomainMismatch,
                "schedule covers different working hours than the instance");
  }
  VerificationReport report;
  const int n = instance.num_taxa();
  for (TaxonId x : schedule.saved()) {
    if (x < 0 || x >= n) throw Error(ErrorCode::kUnknownTaxon, "saved id out of range");
  }
  struct Usage {
    int64_t count = 0;
    int team = kNone;
    bool multi_team = false;
    int64_t first = 0;
    int64_t last = 0;
  };
  std::vector<Usage> usage(n);
  for (int i = 0; i < schedule.num_teams(); ++i) {
    for (int64_t j = teams[i].start + 1; j <= teams[i].end; ++j) {
      const TaxonId x = schedule.at(i, j);
      if (x == kNone) continue;
      if (x < 0 || x >= n) throw Error(ErrorCode::kUnknownTaxon, "assigned id out of range");
      if (!schedule.saved().contains(x)) {
        report.violations.push_back({ViolationKind::kNotInSavedSet, x, i, j});
      }
      if (j > instance.taxon(x).extinction_time) {
        report.violations.push_back({ViolationKind::kPostDeadline, x, i, j});
      }
      Usage& u = usage[x];
      if (u.count == 0) {
        u.team = i;
        u.first = j;
      } else if (u.team != i) {
        u.multi_team = true;
      }
      u.last = std::max(u.last, j);
      u.first = std::min(u.first, j);
      ++u.count;
    }
  }
  for (TaxonId x : schedule.saved()) {
    const Usage& u = usage[x];
    const int64_t need = instance.taxon(x).rescue_length;
    report.hours.push_back({x, u.count, need});
    if (u.count < need) {
      report.violations.push_back({ViolationKind::kInsufficientHours, x});
    }
  }
  if (schedule.mode() == Mode::kStrict) {
    for (TaxonId x = 0; x < n; ++x) {
      const Usage& u = usage[x];
      if (u.count == 0) continue;
      if (u.multi_team || u.last - u.first + 1 != u.count) {
        report.violations.push_back({ViolationKind::kStrictnessViolation, x});
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace tpd
