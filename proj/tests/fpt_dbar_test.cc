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


#include "tpd/fpt_dbar.h"

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "dbar_witness.h"
#include "fixtures.h"
#include "gtest/gtest.h"
#include "tpd/error.h"
#include "tpd/feasibility.h"
#include "tpd/model.h"
#include "tpd/oracle.h"

namespace tpd {
namespace {

using testing::CheckAnchoredWitness;
using testing::SixLeafTreeExtras;
using testing::SixLeafTree;
using testing::SixLeafTreeKeys;
using testing::RandomInstance;
using testing::RandomShape;
using testing::WitnessColoring;

ColorMask Mask(std::initializer_list<int> colors) {
  ColorMask m = 0;
  for (int c : colors) m |= ColorMask{1} << c;
  return m;
}

ColorMask Range(int lo, int hi) {
  ColorMask m = 0;
  for (int c = lo; c <= hi; ++c) m |= ColorMask{1} << c;
  return m;
}

class SixLeafTreeTest : public ::testing::Test {
 protected:
  SixLeafTreeTest()
      : instance_(SixLeafTree()),
        index_(BuildDerivedIndex(instance_)),
        coloring_(MakeDbarColoring(instance_.tree(), 6, SixLeafTreeKeys(), SixLeafTreeExtras())) {}

  TaxonId X(int i) const { return *instance_.FindTaxon("x" + std::to_string(i)); }

  // A color-respectful set: x1 hangs below v1 next to e5, x2 below the root next
  // to e3, x6 below v3 next to e8.
  AnchoredSet AnchoredExample() const { return {{X(1), 1, 5}, {X(2), 0, 3}, {X(6), 3, 8}}; }

  Instance instance_;
  DerivedIndex index_;
  DbarColoring coloring_;
};

TEST_F(SixLeafTreeTest, EdgeClasses) {
  for (VertexId v = 1; v < 10; ++v) {
    EXPECT_EQ(coloring_.small[v] != 0, v != 3 && v != 7) << v;
    EXPECT_EQ(coloring_.proper[v] != 0, v != 3 && v != 7) << v;
    if (coloring_.small[v]) {
      EXPECT_EQ(std::popcount(coloring_.colors[v]), instance_.tree().weight(v));
    }
  }
}

TEST_F(SixLeafTreeTest, Goodness) {
  // c(e4) = {9, 10} and the key color of e5 is 6, all 1-based.
  const AnchoredTuple t{X(1), 1, 5};
  EXPECT_TRUE(IsWellFormed(instance_, t));
  EXPECT_TRUE(IsGood(instance_, coloring_, t, Mask({8, 9}), Mask({5})));
  EXPECT_FALSE(IsGood(instance_, coloring_, t, Mask({8}), Mask({5})));
  EXPECT_FALSE(IsGood(instance_, coloring_, t, Mask({8, 9}), Mask({4})));
  // The path of x4 up to the root crosses the heavy e7.
  const AnchoredTuple heavy{X(4), 0, 1};
  EXPECT_TRUE(IsWellFormed(instance_, heavy));
  EXPECT_FALSE(IsGood(instance_, coloring_, heavy, Range(0, 11), Range(0, 11)));
  for (const AnchoredTuple& u : AllTuples(instance_)) {
    EXPECT_FALSE(IsGood(instance_, coloring_, u, Range(0, 11), 0));
  }
}

TEST_F(SixLeafTreeTest, Grounding) {
  for (int q = 0; q < 3; ++q) {
    EXPECT_TRUE(IsQGrounding(instance_, index_, coloring_, 0, Range(0, 11), q));
    EXPECT_TRUE(IsQGrounding(instance_, index_, coloring_, Range(0, 11), 0, q));
  }
  EXPECT_TRUE(IsQGrounding(instance_, index_, coloring_, Range(5, 10),
                           Range(0, 4) | Mask({11}), 0));
  EXPECT_FALSE(IsQGrounding(instance_, index_, coloring_, Mask({8, 9}), Mask({5}), 0));
}

TEST_F(SixLeafTreeTest, ExampleSetIsColorRespectful) {
  const AnchoredSet set = AnchoredExample();
  EXPECT_TRUE(CheckColorRespectful(instance_, coloring_, set));
  ColorMask path = 0;
  ColorMask keys = 0;
  for (const AnchoredTuple& t : set) {
    for (VertexId e : TuplePath(instance_, t)) path |= coloring_.colors[e];
    keys |= ColorMask{1} << coloring_.key_color[t.edge];
  }
  EXPECT_EQ(path, Range(0, 10));
  EXPECT_EQ(keys, Mask({3, 5, 11}));
  EXPECT_TRUE(CheckColorRespectful(instance_, coloring_, {}));
}

TEST_F(SixLeafTreeTest, SwappedAnchorsHaveNoValidOrdering) {
  const AnchoredSet set = {{X(1), 0, 3}, {X(2), 1, 4}, {X(6), 3, 8}};
  for (const AnchoredTuple& t : set) EXPECT_TRUE(IsWellFormed(instance_, t));
  EXPECT_FALSE(FindValidOrdering(instance_, coloring_, set).has_value());
  EXPECT_FALSE(CheckColorRespectful(instance_, coloring_, set));
}

TEST_F(SixLeafTreeTest, ExampleSetMeetsTheDeficits) {
  const Instance busy = SixLeafTree({{8, 25}, {17, 25}});
  const DerivedIndex index = BuildDerivedIndex(busy);
  EXPECT_EQ(index.deficit, (std::vector<int64_t>{10, 22, 35}));
  const AnchoredSet set = AnchoredExample();
  const TaxaSet lost = AnchoredTaxa(set);
  std::vector<int64_t> sacrificed(index.num_classes, 0);
  int64_t running = 0;
  for (int j = 0; j < index.num_classes; ++j) {
    for (int x = index.class_begin(j); x < index.class_end[j]; ++x) {
      if (lost.contains(x)) running += busy.taxon(x).rescue_length;
    }
    sacrificed[j] = running;
  }
  EXPECT_EQ(sacrificed, (std::vector<int64_t>{10, 22, 35}));
  const TaxaSet rescued = RescuedBy(busy, set);
  EXPECT_EQ(busy.Names(rescued), (std::vector<std::string>{"x4", "x3", "x5"}));
  EXPECT_TRUE(CollaborativeFeasible(index, rescued));
  // The path edges e1, e4, e5, e9 are exactly the edges that die.
  EXPECT_EQ(DeadEdges(busy, lost), (std::vector<VertexId>{1, 4, 5, 9}));
  EXPECT_EQ(PhylogeneticDiversity(busy, rescued), 31 - 11);
}

TEST_F(SixLeafTreeTest, DbarRequiresBinaryTree) {
  EXPECT_THROW(RunAlgorithmDbar(instance_, index_, coloring_), Error);
  try {
    SolveTimePdByDbar(instance_.WithTarget(28));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonBinaryTree);
  }
}

TEST(DbarColoringTest, HashLayout) {
  // Edges 1..4 in canonical order have weights 2, 5, 1, 3.
  const Instance instance = Instance::Create(
      ParseNewick("(x1:2,(x2:1,x3:3):5);"), testing::Taxa({1, 1, 1}, {1, 1, 1}),
      {{0, 1}}, 1, Mode::kCollaborative);
  const PhyloTree& tree = instance.tree();
  // With dbar 3 every edge but the one of weight 5 is small.
  EXPECT_EQ(DbarHashDomain(tree, 3), 4 + 1 + 0 + 2);
  const std::vector<VertexId> order = DbarEdgeOrder(tree, 3);
  ASSERT_EQ(order.size(), 4u);
  EXPECT_EQ(tree.weight(order.back()), 5);
  const std::vector<int> f = {0, 1, 2, 3, 4, 5, 5};
  const DbarColoring c = ColorEdgesForDbar(tree, 3, f);
  for (size_t j = 0; j < order.size(); ++j) EXPECT_EQ(c.key_color[order[j]], f[j]);
  // Extra colors follow the keys, small edges in order.
  int next = 4;
  for (VertexId e : order) {
    if (tree.weight(e) > 3) {
      EXPECT_FALSE(c.small[e]);
      continue;
    }
    ColorMask expected = ColorMask{1} << c.key_color[e];
    for (int64_t u = 1; u < tree.weight(e); ++u) expected |= ColorMask{1} << f[next++];
    EXPECT_EQ(c.colors[e], expected);
  }
  // The last small edge repeats color 5, so it is not proper.
  EXPECT_FALSE(c.proper[order[2]]);
  EXPECT_THROW(ColorEdgesForDbar(tree, 3, std::vector<int>{0, 1}), Error);
}

TEST(DbarTableSizeTest, MatchesStateCount) {
  for (int dbar = 1; dbar <= 5; ++dbar) {
    const int colors = 2 * dbar;
    uint64_t count = 0;
    for (uint32_t c1 = 0; c1 < (1u << colors); ++c1) {
      if (std::popcount(c1) > dbar) continue;
      for (uint32_t c2 = 0; c2 < (1u << colors); ++c2) {
        if ((c1 & c2) == 0) ++count;
      }
    }
    EXPECT_EQ(DbarTableSize(dbar, 1), count);
    EXPECT_EQ(DbarTableSize(dbar, 3), 3 * count);
  }
}

struct DbarCase {
  Instance instance;
  DerivedIndex index;
};

// Binary instances whose loss bound lies in [1, max_dbar].
std::vector<DbarCase> BinaryCases(int count, int max_dbar, int max_taxa = 6) {
  std::vector<DbarCase> out;
  const RandomShape shape{.max_taxa = max_taxa, .binary_only = true};
  for (uint64_t seed = 0; static_cast<int>(out.size()) < count; ++seed) {
    Instance instance = RandomInstance(shape, seed);
    const int64_t pd = instance.tree().total_weight();
    const int64_t dbar = 1 + static_cast<int64_t>(seed % max_dbar);
    if (dbar >= pd) continue;
    instance = instance.WithTarget(pd - dbar);
    DerivedIndex index = BuildDerivedIndex(instance);
    out.push_back({std::move(instance), std::move(index)});
  }
  return out;
}

TEST(AlgorithmDbarTest, YesAnswersAreSound) {
  std::mt19937_64 rng(3);
  for (const DbarCase& c : BinaryCases(150, 4)) {
    const int dbar = static_cast<int>(c.index.dbar);
    std::vector<int> f(DbarHashDomain(c.instance.tree(), dbar));
    for (int rep = 0; rep < 5; ++rep) {
      for (int& x : f) x = static_cast<int>(UniformBelow(rng, 2 * dbar));
      const DbarColoring coloring = ColorEdgesForDbar(c.instance.tree(), dbar, f);
      const DbarColoredResult r = RunAlgorithmDbar(c.instance, c.index, coloring);
      if (!r.yes) continue;
      ASSERT_TRUE(CollaborativeFeasible(c.index, r.saved));
      ASSERT_GE(PhylogeneticDiversity(c.instance, r.saved), c.index.target);
      ASSERT_EQ(RescuedBy(c.instance, r.sacrificed), r.saved);
    }
  }
}

TEST(AlgorithmDbarTest, FindsEveryColorfulWitness) {
  std::mt19937_64 rng(4);
  int solved = 0;
  for (const DbarCase& c : BinaryCases(150, 4)) {
    const SolveOutcome oracle = BruteForceTimePd(c.instance);
    if (!oracle.yes || oracle.saved.empty()) continue;
    const int dbar = static_cast<int>(c.index.dbar);
    const AnchoredSet witness = BuildAnchoredWitness(c.instance, oracle.saved);
    const DbarColoring coloring = WitnessColoring(c.instance, witness, dbar, rng);
    ASSERT_TRUE(CheckColorRespectful(c.instance, coloring, witness));
    const DbarColoredResult r = RunAlgorithmDbar(c.instance, c.index, coloring);
    ASSERT_TRUE(r.yes) << InstanceToJson(c.instance);
    ++solved;
  }
  EXPECT_GT(solved, 30);
}

TEST(AlgorithmDbarTest, EmptySacrificeWhenTeamsSaveEverything) {
  const Instance instance = Instance::Create(
      ParseNewick("((x1:1,x2:2):1,x3:2);"), testing::Taxa({1, 1, 1}, {3, 3, 3}),
      {{0, 3}}, 5, Mode::kCollaborative);
  const DerivedIndex index = BuildDerivedIndex(instance);
  std::vector<int> f(DbarHashDomain(instance.tree(), 1), 0);
  const DbarColoredResult r =
      RunAlgorithmDbar(instance, index, ColorEdgesForDbar(instance.tree(), 1, f));
  EXPECT_TRUE(r.yes);
  EXPECT_TRUE(r.sacrificed.empty());
  EXPECT_EQ(r.saved, TaxaSet::Range(3));
}

TEST(AlgorithmDbarTest, TableOrdersAgree) {
  std::mt19937_64 rng(5);
  for (const DbarCase& c : BinaryCases(40, 3)) {
    const int dbar = static_cast<int>(c.index.dbar);
    std::vector<int> f(DbarHashDomain(c.instance.tree(), dbar));
    for (int& x : f) x = static_cast<int>(UniformBelow(rng, 2 * dbar));
    const DbarColoring coloring = ColorEdgesForDbar(c.instance.tree(), dbar, f);
    const DbarColoredResult full =
        RunAlgorithmDbar(c.instance, c.index, coloring, DbarTableMode::kFull);
    const DbarColoredResult reversed =
        RunAlgorithmDbar(c.instance, c.index, coloring, DbarTableMode::kFullReversed);
    const DbarColoredResult reachable =
        RunAlgorithmDbar(c.instance, c.index, coloring, DbarTableMode::kReachable);
    ASSERT_EQ(full.stats.table, reversed.stats.table);
    ASSERT_EQ(full.stats.entries, DbarTableSize(dbar, c.index.num_classes));
    ASSERT_EQ(full.yes, reachable.yes);
    ASSERT_EQ(full.yes, reversed.yes);
    ASSERT_LE(reachable.stats.entries, full.stats.entries);
  }
}

TEST(SolveTimePdByDbarTest, AgreesWithOracle) {
  int yes = 0;
  for (const DbarCase& c : BinaryCases(120, 4)) {
    const SolveOutcome oracle = BruteForceTimePd(c.instance);
    const SolveOutcome out = SolveTimePdByDbar(c.instance, {.delta = 0.01, .seed = 9});
    ASSERT_EQ(out.yes, oracle.yes) << InstanceToJson(c.instance);
    if (out.yes) {
      ++yes;
      CertifyOutcome(c.instance, out);
    }
  }
  EXPECT_GT(yes, 10);
}

TEST(SolveTimePdByDbarTest, ZeroLossChecksTheWholeSet) {
  for (const DbarCase& c : BinaryCases(40, 2)) {
    const Instance all = c.instance.WithTarget(c.index.total_pd);
    const SolveOutcome out = SolveTimePdByDbar(all);
    EXPECT_EQ(out.yes, CollaborativeFeasible(c.index, TaxaSet::Range(all.num_taxa())));
    EXPECT_EQ(out.trials, 0u);
  }
}

TEST(SolveTimePdByDbarTest, Guards) {
  const DbarCase c = BinaryCases(1, 1, 6)[0];
  const Instance loose = c.instance.WithTarget(1);
  if (BuildDerivedIndex(loose).dbar > 6) {
    try {
      SolveTimePdByDbar(loose);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDbarTooLarge);
    }
  }
  EXPECT_THROW(SolveTimePdByDbar(c.instance.WithMode(Mode::kStrict)), Error);
}

TEST(AnchoredWitnessTest, ExhaustiveOnSmallBinaryTrees) {
  std::mt19937_64 rng(6);
  for (uint64_t seed = 0; seed < 60; ++seed) {
    const Instance instance =
        RandomInstance(RandomShape{.max_taxa = 6, .binary_only = true}, seed);
    const DerivedIndex index = BuildDerivedIndex(instance);
    for (uint64_t m = 1; m < (uint64_t{1} << instance.num_taxa()); ++m) {
      const TaxaSet saved = TaxaSet::FromMask(m);
      if (!CollaborativeFeasible(index, saved)) continue;
      ASSERT_EQ(CheckAnchoredWitness(instance, saved, rng), "")
          << "seed " << seed << " mask " << m;
    }
  }
}

}  // namespace
}  // namespace tpd
