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

#include <cstdint>
#include <string>

#include "fixtures.h"
#include "gtest/gtest.h"
#include "tpd/error.h"
#include "tpd/io.h"
#include "tpd/model.h"
#include "tpd/oracle.h"

namespace tpd {
namespace {

using testing::FourTeamStar;
using testing::SixLeafTree;
using testing::RandomInstance;
using testing::RandomShape;
using testing::Taxa;

// Neither binary nor a star.
Instance BushInstance(int64_t target, Mode mode = Mode::kCollaborative) {
  return Instance::Create(ParseNewick("((x1:1,x2:1,x3:1):2,x4:3);"),
                          Taxa({1, 2, 1, 2}, {2, 4, 4, 5}), {{0, 5}}, target, mode);
}

Instance BinaryInstance(int64_t target) {
  return Instance::Create(ParseNewick("((x1:2,x2:3):3,(x3:2,x4:7):3);"),
                          Taxa({1, 1, 1, 1}, {5, 5, 5, 5}), {{0, 5}}, target,
                          Mode::kCollaborative);
}

SolveOptions MaxD(int max_d) {
  SolveOptions options;
  options.auto_max_d = max_d;
  return options;
}

std::string AutoPick(const Instance& instance, const SolveOptions& options = {}) {
  return Solve(instance, options).algorithm;
}

TEST(AlgorithmRegistryTest, NamesRoundTrip) {
  EXPECT_EQ(ParseAlgorithm("auto"), Algorithm::kAuto);
  for (Algorithm a : AllAlgorithms()) EXPECT_EQ(ParseAlgorithm(AlgorithmName(a)), a);
  EXPECT_EQ(AllAlgorithms().size(), 8u);
  EXPECT_FALSE(ParseAlgorithm("greedy").has_value());
}

TEST(AlgorithmRegistryTest, Modes) {
  for (Algorithm a : AllAlgorithms()) {
    EXPECT_TRUE(SupportsMode(a, Mode::kCollaborative) || a == Algorithm::kHoursSubsets);
  }
  EXPECT_TRUE(SupportsMode(Algorithm::kBrute, Mode::kStrict));
  EXPECT_TRUE(SupportsMode(Algorithm::kFptD, Mode::kStrict));
  EXPECT_TRUE(SupportsMode(Algorithm::kHoursSubsets, Mode::kStrict));
  EXPECT_FALSE(SupportsMode(Algorithm::kStar, Mode::kStrict));
  EXPECT_FALSE(SupportsMode(Algorithm::kFptDbar, Mode::kStrict));
  EXPECT_TRUE(IsRandomized(Algorithm::kFptD));
  EXPECT_TRUE(IsRandomized(Algorithm::kFptDbar));
  EXPECT_FALSE(IsRandomized(Algorithm::kStar));
}

TEST(SolveTest, ExplicitAlgorithmWithWrongModeThrows) {
  try {
    SolveOptions options;
    options.algorithm = Algorithm::kHoursBudget;
    Solve(BushInstance(3, Mode::kStrict), options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedMode);
  }
}

TEST(SolveAutoTest, SelectionOrder) {
  EXPECT_EQ(AutoPick(BushInstance(0)), "trivial");
  EXPECT_EQ(AutoPick(BushInstance(100)), "trivial");
  EXPECT_EQ(AutoPick(FourTeamStar()), "star");
  EXPECT_EQ(AutoPick(BinaryInstance(18)), "fpt-dbar");
  EXPECT_EQ(AutoPick(BinaryInstance(15)), "hours-budget");
  EXPECT_EQ(AutoPick(SixLeafTree().WithTarget(10)), "fpt-d");
  EXPECT_EQ(AutoPick(SixLeafTree()), "hours-budget");
  EXPECT_EQ(AutoPick(BushInstance(5)), "fpt-d");
  EXPECT_EQ(AutoPick(BushInstance(5), MaxD(4)), "hours-budget");
  EXPECT_EQ(AutoPick(BushInstance(5, Mode::kStrict)), "fpt-d-strict");
  EXPECT_EQ(AutoPick(BushInstance(5, Mode::kStrict), MaxD(4)), "hours-subsets");
}

TEST(SolveAutoTest, FallsThroughGuards) {
  SolveOptions options = MaxD(0);
  options.limits.max_states = 1;
  EXPECT_EQ(AutoPick(BushInstance(5), options), "brute");
  EXPECT_EQ(AutoPick(BushInstance(5, Mode::kStrict), options), "brute-strict");
  options.brute_max_taxa = 2;
  options.brute_strict_max_taxa = 2;
  for (Mode mode : {Mode::kCollaborative, Mode::kStrict}) {
    try {
      Solve(BushInstance(5, mode), options);
      FAIL();
    } catch (const Error& e) {
      EXPECT_TRUE(IsGuardError(e.code()));
    }
  }
}

TEST(SolveAutoPropertyTest, MatchesOracle) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const Mode mode = seed % 3 ? Mode::kCollaborative : Mode::kStrict;
    const Instance instance = RandomInstance(RandomShape{.mode = mode}, seed);
    const SolveOutcome oracle = mode == Mode::kStrict ? BruteForceSTimePd(instance)
                                                      : BruteForceTimePd(instance);
    const SolveOutcome out = Solve(instance);
    if (out.yes) CertifyOutcome(instance, out);
    // Randomized picks may miss with probability at most delta.
    if (out.yes || out.trials == 0) {
      ASSERT_EQ(out.yes, oracle.yes) << "seed " << seed << " via " << out.algorithm;
    }
  }
}

}  // namespace
}  // namespace tpd
