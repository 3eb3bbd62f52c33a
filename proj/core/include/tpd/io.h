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

// Newick trees and the JSON instance and schedule files.
//
// Instance file:
//   {"v": 1, "tree": "((a:2,b:1):3,c:4);",
//    "taxa": {"a": {"ell": 2, "ex": 5}, ...},
//    "teams": [{"start": 0, "end": 6}, ...],
//    "D": 7, "mode": "collaborative" | "strict"}
// Schedule file:
//   {"mode": ..., "assignments": [{"team": 0, "slot": 1, "taxon": "a"}, ...],
//    "saved": ["a", ...], "pd": 7}
// Teams are 0-based indices into the instance's team list; slots are the
// absolute 1-based timeslots.

#ifndef TPD_IO_H_
#define TPD_IO_H_

#include <string>
#include <string_view>

#include "tpd/feasibility.h"
#include "tpd/model.h"

namespace tpd {

// Branch lengths are required on every non-root edge and must be integers.
// Throws ParseError with kParseError, kNonIntegerWeight or kDuplicateLeaf.
PhyloTree ParseNewick(std::string_view text);
std::string ToNewick(const PhyloTree& tree);

// Throws kSchemaError (or a Newick/instance error) on bad input.
Instance ParseInstanceJson(std::string_view text);
std::string InstanceToJson(const Instance& instance);

Schedule ParseScheduleJson(const Instance& instance, std::string_view text);
std::string ScheduleToJson(const Instance& instance, const Schedule& schedule);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view text);

}  // namespace tpd

#endif  // TPD_IO_H_
