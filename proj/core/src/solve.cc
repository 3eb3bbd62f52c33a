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

#include "tpd/solve.h"

#include <array>
#include <string>
#include <vector>

#include "tpd/dp_structured.h"
#include "tpd/error.h"
#include "tpd/fpt_dbar.h"
#include "tpd/oracle.h"

namespace tpd {
namespace {

constexpr std::array kAlgorithms = {
    Algorithm::kBrute,       Algorithm::kFptD,         Algorithm::kFptDbar,
    Algorithm::kHoursTeams,  Algorithm::kHoursBudget,  Algorithm::kHoursSubsets,
    Algorithm::kXpCounts,    Algorithm::kStar,
};

SolveOutcome RunOne(const Instance& instance, Algorithm algorithm,
                    const SolveOptions& options) {
  if (!SupportsMode(algorithm, instance.mode())) {
    throw Error(ErrorCode::kUnsupportedMode,
                std::string(AlgorithmName(algorithm)) + " does not handle " +
                    std::string(ModeName(instance.mode())) + " instances");
  }
  const bool strict = instance.mode() == Mode::kStrict;
  switch (algorithm) {
    case Algorithm::kBrute:
      return strict ? BruteForceSTimePd(instance, options.brute_strict_max_taxa)
                    : BruteForceTimePd(instance, options.brute_max_taxa);
    case Algorithm::kFptD:
      return strict ? SolveSTimePdByD(instance, options.randomized)
                    : SolveTimePdByD(instance, options.randomized);
    case Algorithm::kFptDbar:
      return SolveTimePdByDbar(instance, options.randomized);
    case Algorithm::kHoursTeams:
      return SolveTimePdTeamVectors(instance, options.limits);
    case Algorithm::kHoursBudget:
      return SolveTimePdHourVectors(instance, options.limits);
    case Algorithm::kHoursSubsets:
      return SolveSTimePdTeamSubsets(instance, options.limits);
    case Algorithm::kXpCounts:
      return SolveTimePdXp(instance, options.limits);
    case Algorithm::kStar:
      return SolveStar(instance);
    case Algorithm::kAuto:
      break;
  }
  throw Error(ErrorCode::kInternal, "no dispatch for auto");
}

SolveOutcome SolveAuto(const Instance& instance, const SolveOptions& options) {
  const DerivedIndex index = BuildDerivedIndex(instance);
  if (auto trivial = TrivialOutcome(instance, index, "trivial")) return *trivial;

  std::vector<Algorithm> order;
  if (instance.mode() == Mode::kStrict) {
    if (index.target <= options.auto_max_d) order.push_back(Algorithm::kFptD);
    order.push_back(Algorithm::kHoursSubsets);
  } else {
    if (instance.tree().IsStar()) order.push_back(Algorithm::kStar);
    if (instance.tree().IsBinary() && index.dbar <= options.auto_max_dbar) {
      order.push_back(Algorithm::kFptDbar);
    }
    if (index.target <= options.auto_max_d) order.push_back(Algorithm::kFptD);
    order.push_back(Algorithm::kHoursBudget);
    order.push_back(Algorithm::kHoursTeams);
    order.push_back(Algorithm::kXpCounts);
  }
  order.push_back(Algorithm::kBrute);

  std::optional<Error> last_guard;
  for (Algorithm algorithm : order) {
    try {
      return RunOne(instance, algorithm, options);
    } catch (const Error& e) {
      if (!IsGuardError(e.code())) throw;
      last_guard = e;
    }
  }
  throw Error(last_guard->code(),
              "every applicable algorithm exceeded its guard; last: " +
                  std::string(last_guard->what()));
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kAuto: return "auto";
    case Algorithm::kBrute: return "brute";
    case Algorithm::kFptD: return "fpt-d";
    case Algorithm::kFptDbar: return "fpt-dbar";
    case Algorithm::kHoursTeams: return "hours-teams";
    case Algorithm::kHoursBudget: return "hours-budget";
    case Algorithm::kHoursSubsets: return "hours-subsets";
    case Algorithm::kXpCounts: return "xp-counts";
    case Algorithm::kStar: return "star";
  }
  return "unknown";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  if (name == "auto") return Algorithm::kAuto;
  for (Algorithm a : kAlgorithms) {
    if (AlgorithmName(a) == name) return a;
  }
  return std::nullopt;
}

std::span<const Algorithm> AllAlgorithms() { return kAlgorithms; }

bool SupportsMode(Algorithm algorithm, Mode mode) {
  switch (algorithm) {
    case Algorithm::kAuto:
    case Algorithm::kBrute:
    case Algorithm::kFptD:
      return true;
    case Algorithm::kHoursSubsets:
      return mode == Mode::kStrict;
    default:
      return mode == Mode::kCollaborative;
  }
}

bool IsRandomized(Algorithm algorithm) {
  return algorithm == Algorithm::kFptD || algorithm == Algorithm::kFptDbar;
}

SolveOutcome Solve(const Instance& instance, const SolveOptions& options) {
  if (options.algorithm == Algorithm::kAuto) return SolveAuto(instance, options);
  return RunOne(instance, options.algorithm, options);
}

}  // namespace tpd
