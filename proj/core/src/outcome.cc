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

#include "tpd/outcome.h"

#include <utility>

#include "tpd/error.h"

namespace tpd {

void CertifyOutcome(const Instance& instance, const SolveOutcome& outcome) {
  if (!outcome.yes) return;
  const std::string who = outcome.algorithm + ": ";
  if (!outcome.schedule) throw Error(ErrorCode::kInternal, who + "yes without schedule");
  const Schedule& schedule = *outcome.schedule;
  if (schedule.mode() != instance.mode()) {
    throw Error(ErrorCode::kInternal, who + "schedule mode differs from instance");
  }
  if (schedule.saved() != outcome.saved) {
    throw Error(ErrorCode::kInternal, who + "schedule rescues a different set");
  }
  const VerificationReport report = VerifySchedule(instance, schedule);
  if (!report.ok) {
    throw Error(ErrorCode::kInternal, who + "invalid witness\n" + report.Describe(instance));
  }
  const int64_t pd = PhylogeneticDiversity(instance, outcome.saved);
  if (pd != outcome.pd || pd < instance.target_diversity()) {
    throw Error(ErrorCode::kInternal, who + "witness misses the target diversity");
  }
}

SolveOutcome MakeYes(const Instance& instance, const DerivedIndex& index,
                     TaxaSet saved, std::optional<Schedule> schedule,
                     std::string algorithm) {
  SolveOutcome out;
  out.yes = true;
  out.algorithm = std::move(algorithm);
  if (!schedule) {
    if (instance.mode() != Mode::kCollaborative) {
      throw Error(ErrorCode::kInternal, out.algorithm + ": strict witness needs a schedule");
    }
    schedule = BuildCollaborativeSchedule(instance, index, saved);
  }
  out.pd = PhylogeneticDiversity(instance, saved);
  out.saved = std::move(saved);
  out.schedule = std::move(schedule);
  CertifyOutcome(instance, out);
  return out;
}

SolveOutcome MakeNo(std::string algorithm) {
  SolveOutcome out;
  out.algorithm = std::move(algorithm);
  return out;
}

std::optional<SolveOutcome> TrivialOutcome(const Instance& instance,
                                           const DerivedIndex& index,
                                           const std::string& algorithm) {
  if (index.target == 0) {
    Schedule empty(instance.mode(), instance.teams());
    return MakeYes(instance, index, TaxaSet(), std::move(empty), algorithm);
  }
  if (index.target > index.total_pd) return MakeNo(algorithm);
  return std::nullopt;
}

}  // namespace tpd
