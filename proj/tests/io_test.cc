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


#include "tpd/io.h"

#include <cstdint>
#include <filesystem>
#include <string>

#include "fixtures.h"
#include "gtest/gtest.h"
#include "tpd/error.h"
#include "tpd/feasibility.h"
#include "tpd/model.h"
#include "tpd/oracle.h"

namespace tpd {
namespace {

using testing::FourTeamStar;
using testing::SixLeafTree;
using testing::RandomInstance;
using testing::RandomShape;

ParseError NewickError(std::string_view text) {
  try {
    ParseNewick(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "parsed: " << text;
  return ParseError(ErrorCode::kInternal, 0, "");
}

TEST(NewickTest, Star) {
  const PhyloTree tree = ParseNewick("(a:1,b:2);");
  EXPECT_TRUE(tree.IsStar());
  EXPECT_EQ(tree.num_edges(), 2);
  EXPECT_EQ(tree.total_weight(), 3);
  EXPECT_EQ(tree.weight(*tree.FindLeaf("b")), 2);
}

TEST(NewickTest, Nested) {
  const PhyloTree tree = ParseNewick("((a:1,b:1):1,(c:1,d:1):1);");
  EXPECT_EQ(tree.num_edges(), 6);
  EXPECT_TRUE(tree.IsBinary());
  EXPECT_EQ(tree.leaves().size(), 4u);
}

TEST(NewickTest, WhitespaceCommentsQuotesAndRootLength) {
  const PhyloTree tree =
      ParseNewick(" ( 'x y':3 [note], 'it''s' : 4 )root:9 ;\n");
  ASSERT_TRUE(tree.FindLeaf("x y").has_value());
  ASSERT_TRUE(tree.FindLeaf("it's").has_value());
  EXPECT_EQ(tree.label(tree.root()), "root");
  EXPECT_EQ(tree.total_weight(), 7);
  EXPECT_EQ(ParseNewick(ToNewick(tree)), tree);
}

TEST(NewickTest, Errors) {
  ParseError e = NewickError("(a:1.5,b:2);");
  EXPECT_EQ(e.code(), ErrorCode::kNonIntegerWeight);
  EXPECT_EQ(e.offset(), 3u);
  e = NewickError("(a:1,a:2);");
  EXPECT_EQ(e.code(), ErrorCode::kDuplicateLeaf);
  EXPECT_EQ(e.offset(), 5u);
  e = NewickError("(a:1,b:2)");
  EXPECT_EQ(e.code(), ErrorCode::kParseError);
  EXPECT_EQ(e.offset(), 9u);
  e = NewickError("(a:1,b);");
  EXPECT_EQ(e.code(), ErrorCode::kParseError);
  EXPECT_EQ(e.offset(), 6u);
  EXPECT_EQ(NewickError("(a:1,b:2); x").code(), ErrorCode::kParseError);
  EXPECT_EQ(NewickError("(a:1,:2);").code(), ErrorCode::kParseError);
  EXPECT_EQ(NewickError("(a:1,b:x);").code(), ErrorCode::kNonIntegerWeight);
  EXPECT_EQ(NewickError("(a:1,'b:2);").code(), ErrorCode::kParseError);
}

TEST(NewickTest, RoundTripsRandomTrees) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const PhyloTree tree = RandomInstance(RandomShape{}, seed).tree();
    EXPECT_EQ(ParseNewick(ToNewick(tree)), tree);
  }
}

TEST(InstanceJsonTest, ParsesDocumentedFormat) {
  const Instance instance = ParseInstanceJson(R"({
    "v": 1, "tree": "((a:2,b:1):3,c:4);",
    "taxa": {"a": {"ell": 2, "ex": 5}, "b": {"ell": 1, "ex": 2},
             "c": {"ell": 3, "ex": 6}},
    "teams": [{"start": 0, "end": 6}, {"start": 1, "end": 3}],
    "D": 7, "mode": "strict"})");
  EXPECT_EQ(instance.num_taxa(), 3);
  EXPECT_EQ(instance.num_teams(), 2);
  EXPECT_EQ(instance.target_diversity(), 7);
  EXPECT_EQ(instance.mode(), Mode::kStrict);
  EXPECT_EQ(instance.taxon(*instance.FindTaxon("a")), (TaxonInfo{2, 5}));
}

TEST(InstanceJsonTest, RoundTrips) {
  EXPECT_EQ(ParseInstanceJson(InstanceToJson(FourTeamStar())), FourTeamStar());
  EXPECT_EQ(ParseInstanceJson(InstanceToJson(SixLeafTree())), SixLeafTree());
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const Instance instance = RandomInstance(
        RandomShape{.mode = seed % 2 ? Mode::kStrict : Mode::kCollaborative}, seed);
    ASSERT_EQ(ParseInstanceJson(InstanceToJson(instance)), instance);
  }
}

TEST(InstanceJsonTest, SchemaErrors) {
  const std::string good_tree = R"("tree": "(a:1,b:1);")";
  const std::string good_taxa = R"("taxa": {"a": {"ell": 1, "ex": 2}, "b": {"ell": 1, "ex": 2}})";
  const std::string good_teams = R"("teams": [{"start": 0, "end": 2}])";
  auto doc = [](const std::string& body) { return R"({"v": 1, )" + body + "}"; };
  auto code_of = [](const std::string& text) {
    try {
      ParseInstanceJson(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  const std::string rest = good_taxa + "," + good_teams + R"(, "mode": "strict")";
  EXPECT_EQ(code_of(doc(good_tree + "," + rest + R"(, "D": 2)")), ErrorCode::kInternal);
  EXPECT_EQ(code_of(doc(good_tree + "," + rest)), ErrorCode::kSchemaError);
  EXPECT_EQ(code_of(doc(good_tree + "," + rest + R"(, "D": "2")")), ErrorCode::kSchemaError);
  EXPECT_EQ(code_of(doc(good_tree + "," + good_taxa + "," + good_teams +
                        R"(, "mode": "lazy", "D": 2)")),
            ErrorCode::kSchemaError);
  EXPECT_EQ(code_of(doc(R"x("tree": "(a:1,b:1)",)x" + rest + R"(, "D": 2)")),
            ErrorCode::kParseError);
  EXPECT_EQ(code_of("{\"tree\": "), ErrorCode::kParseError);
  EXPECT_EQ(code_of(R"({"v": 2})"), ErrorCode::kSchemaError);
  EXPECT_EQ(code_of(doc(R"("tree": "(a:1,c:1);",)" + rest + R"(, "D": 2)")),
            ErrorCode::kInvalidInstance);
}

TEST(ScheduleJsonTest, RoundTripsSolverSchedules) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    const Mode mode = seed % 2 ? Mode::kStrict : Mode::kCollaborative;
    const Instance instance =
        RandomInstance(RandomShape{.max_taxa = 5, .mode = mode}, seed);
    const SolveOutcome out = mode == Mode::kStrict ? BruteForceSTimePd(instance)
                                                   : BruteForceTimePd(instance);
    if (!out.yes) continue;
    const Schedule& schedule = *out.schedule;
    const Schedule parsed =
        ParseScheduleJson(instance, ScheduleToJson(instance, schedule));
    EXPECT_EQ(parsed.saved(), schedule.saved());
    EXPECT_EQ(parsed.mode(), schedule.mode());
    for (int i = 0; i < instance.num_teams(); ++i) {
      const TeamWindow& w = instance.teams()[i];
      for (int64_t j = w.start + 1; j <= w.end; ++j) {
        ASSERT_EQ(parsed.at(i, j), schedule.at(i, j));
      }
    }
    EXPECT_TRUE(VerifySchedule(instance, parsed).ok);
  }
}

TEST(ScheduleJsonTest, RejectsPairsOutsideTheWorkingHours) {
  const Instance instance = FourTeamStar();
  EXPECT_THROW(ParseScheduleJson(instance, R"({"mode": "collaborative",
      "assignments": [{"team": 0, "slot": 18, "taxon": "x1"}], "saved": ["x1"]})"),
               Error);
  EXPECT_THROW(ParseScheduleJson(instance, R"({"mode": "collaborative",
      "assignments": [{"team": 0, "slot": 1, "taxon": "zz"}], "saved": []})"),
               Error);
}

TEST(FileTest, WriteThenRead) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "tpd_io_test.txt").string();
  WriteTextFile(path, "hello\n");
  EXPECT_EQ(ReadTextFile(path), "hello\n");
  std::filesystem::remove(path);
  EXPECT_THROW(ReadTextFile(path), Error);
}

}  // namespace
}  // namespace tpd
