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

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "fixtures.h"
#include "gtest/gtest.h"
#include "tpd/error.h"
#include "tpd/model.h"
#include "tpd/oracle.h"

namespace tpd {
namespace {

using testing::ThreeTeamStar;
using testing::RandomInstance;
using testing::RandomShape;
using testing::StarInstance;

using Solver = std::function<SolveOutcome(const Instance&, const StateLimits&)>;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(TeamVectorsTest, SingleTaxonDeadline) {
  // x2 can never be saved; x1 needs all three slots.
  const Instance fits = StarInstance({4, 1}, {3, 9}, {3, 1}, {{0, 3}}, 4);
  EXPECT_TRUE(SolveTimePdTeamVectors(fits).yes);
  const Instance late = StarInstance({4, 1}, {3, 9}, {2, 1}, {{0, 3}}, 4);
  const SolveOutcome out = SolveTimePdTeamVectors(late);
  EXPECT_FALSE(out.yes);
  EXPECT_EQ(out.optimum, 0);
}

TEST(HourVectorsTest, ThreeTeamStarSavesEverything) {
  const Instance instance = ThreeTeamStar();
  const SolveOutcome out = SolveTimePdHourVectors(instance);
  ASSERT_TRUE(out.yes);
  EXPECT_EQ(out.saved, TaxaSet::Range(6));
  CertifyOutcome(instance, out);
}

TEST(HourVectorsTest, ZeroTarget) {
  const Instance instance = ThreeTeamStar().WithTarget(0);
  EXPECT_TRUE(SolveTimePdHourVectors(instance).yes);
  EXPECT_TRUE(SolveTimePdTeamVectors(instance).yes);
}

TEST(TeamSubsetsTest, Examples) {
  const Instance one = StarInstance({1, 1}, {2, 9}, {2, 2}, {{0, 2}}, 1, Mode::kStrict);
  const SolveOutcome out = SolveSTimePdTeamSubsets(one);
  ASSERT_TRUE(out.yes);
  EXPECT_EQ(one.Names(out.saved), std::vector<std::string>{"x1"});
  CertifyOutcome(one, out);

  // Both taxa need the whole window of the only team.
  const Instance both = StarInstance({1, 1}, {3, 3}, {3, 3}, {{0, 3}}, 2, Mode::kStrict);
  const SolveOutcome two = SolveSTimePdTeamSubsets(both);
  EXPECT_FALSE(two.yes);
  EXPECT_EQ(two.optimum, 1);
}

TEST(TeamSubsetsTest, RunMustEndByTheDeadline) {
  // Slots 1..4 are free, but x1 dies at slot 2 and needs 3 slots.
  const Instance instance =
      StarInstance({1, 1}, {3, 1}, {2, 4}, {{0, 4}}, 2, Mode::kStrict);
  EXPECT_FALSE(SolveSTimePdTeamSubsets(instance).yes);
}

TEST(DpHoursTest, ModeAndGuards) {
  const Instance collab = ThreeTeamStar();
  EXPECT_EQ(CodeOf([&] { SolveSTimePdTeamSubsets(collab); }), ErrorCode::kUnsupportedMode);
  EXPECT_EQ(CodeOf([&] { SolveTimePdTeamVectors(collab.WithMode(Mode::kStrict)); }),
            ErrorCode::kUnsupportedMode);
  const StateLimits tiny{.max_states = 4, .max_transitions = 100, .max_stored_values = 100};
  EXPECT_EQ(CodeOf([&] { SolveTimePdTeamVectors(collab, tiny); }),
            ErrorCode::kStateSpaceTooLarge);
  EXPECT_EQ(CodeOf([&] { SolveTimePdHourVectors(collab, tiny); }),
            ErrorCode::kStateSpaceTooLarge);
  EXPECT_EQ(CodeOf([&] { SolveSTimePdTeamSubsets(collab.WithMode(Mode::kStrict), tiny); }),
            ErrorCode::kStateSpaceTooLarge);
}

void ExpectMatchesOracle(const Solver& solve, const RandomShape& shape, int count) {
  for (uint64_t seed = 0; seed < static_cast<uint64_t>(count); ++seed) {
    const Instance instance = RandomInstance(shape, seed);
    const SolveOutcome oracle = shape.mode == Mode::kStrict
                                    ? BruteForceSTimePd(instance)
                                    : BruteForceTimePd(instance);
    const SolveOutcome out = solve(instance, StateLimits{});
    ASSERT_EQ(out.yes, oracle.yes) << "seed " << seed;
    ASSERT_EQ(out.optimum, oracle.optimum) << "seed " << seed;
    if (out.yes) CertifyOutcome(instance, out);
  }
}

TEST(DpHoursPropertyTest, TeamVectorsMatchOracle) {
  ExpectMatchesOracle(SolveTimePdTeamVectors,
                      {.max_taxa = 6, .max_teams = 2, .max_ex = 4}, 300);
}

TEST(DpHoursPropertyTest, HourVectorsMatchOracle) {
  ExpectMatchesOracle(SolveTimePdHourVectors,
                      {.max_taxa = 6, .max_teams = 2, .max_ex = 6}, 300);
}

TEST(DpHoursPropertyTest, TeamSubsetsMatchOracle) {
  ExpectMatchesOracle(SolveSTimePdTeamSubsets,
                      {.max_taxa = 5, .max_teams = 2, .max_ex = 3, .mode = Mode::kStrict},
                      300);
}

// Same tree with the children of every vertex in a random order.
Instance ShuffleChildren(const Instance& instance, uint64_t seed) {
  const TreeSpec spec = instance.tree().ToSpec();
  const int n = static_cast<int>(spec.parent.size());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[UniformBelow(rng, i + 1)]);
  TreeSpec out;
  out.parent.resize(n);
  out.weight.resize(n);
  out.label.resize(n);
  for (int v = 0; v < n; ++v) {
    out.parent[perm[v]] = spec.parent[v] == kNone ? kNone : perm[spec.parent[v]];
    out.weight[perm[v]] = spec.weight[v];
    out.label[perm[v]] = spec.label[v];
  }
  return Instance::Create(PhyloTree::Build(out), instance.TaxaMap(),
                          {instance.teams().begin(), instance.teams().end()},
                          instance.target_diversity(), instance.mode());
}

TEST(DpHoursPropertyTest, ChildOrderDoesNotMatter) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    const Instance instance =
        RandomInstance({.max_taxa = 6, .max_teams = 2, .max_ex = 4}, seed);
    const Instance shuffled = ShuffleChildren(instance, seed);
    ASSERT_EQ(SolveTimePdTeamVectors(instance).optimum,
              SolveTimePdTeamVectors(shuffled).optimum);
    ASSERT_EQ(SolveTimePdHourVectors(instance).optimum,
              SolveTimePdHourVectors(shuffled).optimum);
    const Instance strict = instance.WithMode(Mode::kStrict);
    ASSERT_EQ(SolveSTimePdTeamSubsets(strict).optimum,
              SolveSTimePdTeamSubsets(ShuffleChildren(strict, seed)).optimum);
  }
}

TEST(DpHoursPropertyTest, OptimumCoversTheBestSinglePath) {
  // With target 1 the optimum is at least the heaviest savable root path.
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const Instance instance =
        RandomInstance({.max_taxa = 6, .max_teams = 2, .max_ex = 6}, seed).WithTarget(1);
    const DerivedIndex index = BuildDerivedIndex(instance);
    int64_t best_path = 0;
    for (TaxonId x = 0; x < instance.num_taxa(); ++x) {
      if (IsSavableAlone(instance, index, x)) {
        best_path = std::max(best_path, PhylogeneticDiversity(instance, TaxaSet{x}));
      }
    }
    const SolveOutcome out = SolveTimePdHourVectors(instance);
    ASSERT_GE(*out.optimum, best_path);
  }
}

}  // namespace
}  // namespace tpd
