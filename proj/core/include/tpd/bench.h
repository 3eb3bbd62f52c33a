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

// Seeded sweeps that run every applicable solver on random instances and
// check the answers against the brute-force oracle.
//
// Sweep spec (every field optional):
//   {"seed": 0, "count": 500, "min_taxa": 2, "max_taxa": 7,
//    "min_teams": 1, "max_teams": 3, "max_ex": 8, "max_ell": 4,
//    "max_omega": 5, "shapes": ["star", "caterpillar", ...],
//    "mode": "collaborative", "savable_probability": 0.8,
//    "target": "uniform" | "half", "algorithms": ["fpt-d", ...],
//    "delta": 0.001, "fpt_d_max": 8, "fpt_dbar_max": 6, "jobs": 1}

#ifndef TPD_BENCH_H_
#define TPD_BENCH_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tpd/generators.h"
#include "tpd/model.h"
#include "tpd/solve.h"

namespace tpd {

struct SweepSpec {
  uint64_t seed = 0;
  int count = 500;
  int min_taxa = 2;
  int max_taxa = 7;
  int min_teams = 1;
  int max_teams = 3;
  int64_t max_ex = 8;
  int64_t max_ell = 4;
  int64_t max_omega = 5;
  std::vector<TreeShape> shapes = {TreeShape::kStar, TreeShape::kCaterpillar,
                                   TreeShape::kRandomBinary,
                                   TreeShape::kRandomMultifurcating};
  Mode mode = Mode::kCollaborative;
  double savable_probability = 0.8;
  // Uniform draws D from [1, PD(X)]; otherwise D = ceil(PD(X) / 2).
  bool uniform_target = true;
  // Empty means every algorithm that handles `mode`.
  std::vector<Algorithm> algorithms;
  double delta = 1e-3;
  // The randomized solvers run only when D (or the loss bound) is this small.
  int fpt_d_max = 8;
  int fpt_dbar_max = 6;
  int jobs = 1;
};

// Throws kSchemaError.
SweepSpec ParseSweepSpec(std::string_view text);

Instance SweepInstance(const SweepSpec& spec, int index);

enum class Verdict { kAgree, kDisagree, kFalseNo, kSkipped };

struct BenchRow {
  int index = 0;
  uint64_t seed = 0;
  std::string shape;
  int num_taxa = 0;
  int num_teams = 0;
  int64_t max_ex = 0;
  int64_t target = 0;
  int64_t dbar = 0;
  std::string algorithm;
  std::string decision;  // "yes", "no", "skipped" or "error"
  int64_t value = 0;     // diversity of the witness, or the optimum when known
  bool oracle_yes = false;
  double runtime_ms = 0.0;
  uint64_t trials = 0;
  Verdict verdict = Verdict::kAgree;
  std::string note;
};

struct RandomizedTally {
  uint64_t oracle_yes_runs = 0;
  uint64_t false_no = 0;
  uint64_t yes_on_no = 0;
  uint64_t allowed_false_no = 0;
};

struct SweepResult {
  std::vector<BenchRow> rows;
  int instances = 0;
  int disagreements = 0;  // includes excess false negatives
  std::map<std::string, RandomizedTally> randomized;
  std::map<std::string, int> runs;  // non-skipped runs per algorithm
  std::optional<Instance> minimal_disagreement;
  double seconds = 0.0;

  bool ok() const { return disagreements == 0; }
};

SweepResult RunSweep(const SweepSpec& spec);

std::string SweepCsv(const SweepResult& result);

// Smallest k with P[Binomial(n, p) <= k] >= q.
uint64_t BinomialQuantile(uint64_t n, double p, double q);

}  // namespace tpd

#endif  // TPD_BENCH_H_
