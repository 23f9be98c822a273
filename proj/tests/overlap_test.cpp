// Copyright 2026 The promptsplit Authors.
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

#include "promptsplit/overlap.hpp"

#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace promptsplit {
namespace {

Utterance U(const std::string& id, const std::string& speaker,
            const std::string& prompt, Severity severity = Severity::kSevere) {
  return MakeUtterance(id, speaker, severity, prompt);
}

LosoSplit ExampleSplit() {
  LosoSplit s;
  s.target_speaker = "T";
  s.train = {U("1", "A", "yes"), U("2", "A", "yes"), U("3", "B", "yes"),
             U("4", "B", "up")};
  s.test = {U("5", "T", "yes"), U("6", "T", "yes"), U("7", "T", "no")};
  return s;
}

TEST(BuildPartitionProblemTest, CountsMultiplicities) {
  PartitionProblem p = BuildPartitionProblem(ExampleSplit(), 0.5);
  ASSERT_EQ(p.items.size(), 3u);
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> counts;
  for (const PromptItem& item : p.items) {
    counts[item.prompt] = {item.train_count, item.test_count};
  }
  EXPECT_EQ(counts["yes"], std::make_pair(std::int64_t{3}, std::int64_t{2}));
  EXPECT_EQ(counts["up"], std::make_pair(std::int64_t{1}, std::int64_t{0}));
  EXPECT_EQ(counts["no"], std::make_pair(std::int64_t{0}, std::int64_t{1}));
  EXPECT_EQ(p.test_total, 3);
  EXPECT_EQ(p.floor, 2);
}

TEST(BuildPartitionProblemTest, ZeroFractionHasZeroFloor) {
  EXPECT_EQ(BuildPartitionProblem(ExampleSplit(), 0.0).floor, 0);
}

TEST(BuildPartitionProblemTest, UniquePromptWeighting) {
  PartitionProblem p =
      BuildPartitionProblem(ExampleSplit(), 0.5, Weighting::kUniquePrompts);
  EXPECT_EQ(p.test_total, 2);  // "yes" and "no"
  EXPECT_EQ(p.floor, 1);
  milp::BinaryProgram program = ToBinaryProgram(p);
  EXPECT_EQ(program.objective.at("train:yes"), 1);
  EXPECT_EQ(program.cover_weights.at("test:yes"), 1);
}

TEST(BuildPartitionProblemTest, Errors) {
  EXPECT_THROW(BuildPartitionProblem(ExampleSplit(), 1.5), UsageError);
  EXPECT_THROW(BuildPartitionProblem(ExampleSplit(), -0.1), UsageError);
  LosoSplit empty = ExampleSplit();
  empty.test.clear();
  EXPECT_THROW(BuildPartitionProblem(empty, 0.5), DataError);
}

TEST(CeilFractionTest, ExactDecimalArithmetic) {
  EXPECT_EQ(CeilFraction(0.55, 100), 55);
  EXPECT_EQ(CeilFraction(0.55, 739), 407);  // 406.45
  EXPECT_EQ(CeilFraction(0.55, 228), 126);  // 125.4
  EXPECT_EQ(CeilFraction(1.0, 17), 17);
  EXPECT_EQ(CeilFraction(0.0, 17), 0);
}

PartitionProblem ProblemOf(const std::vector<PromptItem>& items, double f) {
  LosoSplit split;
  split.target_speaker = "T";
  int id = 0;
  for (const PromptItem& item : items) {
    for (int i = 0; i < item.train_count; ++i) {
      split.train.push_back(U(std::to_string(id++), "A", item.prompt));
    }
    for (int i = 0; i < item.test_count; ++i) {
      split.test.push_back(U(std::to_string(id++), "T", item.prompt));
    }
  }
  return BuildPartitionProblem(split, f);
}

TEST(DecomposeByCategoryTest, SplitsByTokenCount) {
  PartitionProblem p = ProblemOf({{"a", 2, 1}, {"b", 1, 1}, {"c", 1, 2},
                                  {"d e", 3, 1}, {"f g h", 0, 2}},
                                 0.5);
  auto [words, sentences] = DecomposeByCategory(p);
  EXPECT_EQ(words.items.size(), 3u);
  EXPECT_EQ(sentences.items.size(), 2u);
  EXPECT_EQ(words.test_total + sentences.test_total, p.test_total);
}

TEST(DecomposeByCategoryTest, AllWordsLeavesEmptySentenceProblem) {
  PartitionProblem p = ProblemOf({{"a", 2, 1}, {"b", 1, 3}}, 0.55);
  auto [words, sentences] = DecomposeByCategory(p);
  EXPECT_EQ(words.items, p.items);
  EXPECT_EQ(words.floor, p.floor);
  EXPECT_TRUE(sentences.items.empty());
  EXPECT_EQ(sentences.floor, 0);
  EXPECT_EQ(SolvePartition(sentences).status, milp::SolveStatus::kOptimal);
}

TEST(DecomposeByCategoryTest, PerCategoryCeilingFloors) {
  // IW test total 10 -> ceil(5.5) = 6; sentence test total 4 -> ceil(2.2) = 3.
  PartitionProblem p = ProblemOf(
      {{"a", 5, 4}, {"b", 5, 6}, {"c d", 2, 3}, {"e f", 0, 1}}, 0.55);
  auto [words, sentences] = DecomposeByCategory(p);
  EXPECT_EQ(words.test_total, 10);
  EXPECT_EQ(sentences.test_total, 4);
  EXPECT_EQ(words.floor, 6);
  EXPECT_EQ(sentences.floor, 3);
}

TEST(ApplyAssignmentTest, AllTrainKeepsTrainAndEmptiesTest) {
  LosoSplit s = ExampleSplit();
  Assignment all_train;
  for (const char* p : {"yes", "up", "no"}) {
    all_train.decisions[p] = Decision::kTrain;
  }
  SplitResult r = ApplyAssignment(s, all_train, Assignment{});
  EXPECT_EQ(r.train, s.train);
  EXPECT_TRUE(r.test.empty());
  EXPECT_EQ(r.dropped, 3u);
}

TEST(ApplyAssignmentTest, MissingPromptIsAnError) {
  Assignment partial;
  partial.decisions["yes"] = Decision::kTrain;
  EXPECT_THROW(ApplyAssignment(ExampleSplit(), partial, Assignment{}),
               DataError);
}

TEST(PartitionSplitTest, ExampleIsOptimal) {
  // yes:(3,2), up:(1,0), no:(0,1), floor 2 of 3 test rows. "no" (test only)
  // always goes to test (+1); the floor then needs "yes" on the test side,
  // costing 3 train rows. Objective 1 + 2 + 1 = 4.
  SplitResult r = PartitionSplit(ExampleSplit(), {.f = 0.5});
  EXPECT_EQ(r.train.size(), 1u);
  EXPECT_EQ(r.test.size(), 3u);
  EXPECT_TRUE(VerifyNoOverlap(r).pass);
}

TEST(VerifyNoOverlapTest, InjectedViolation) {
  SplitResult r;
  r.train = {U("1", "A", "yes"), U("2", "A", "up")};
  r.test = {U("3", "T", "yes")};
  VerificationReport v = VerifyNoOverlap(r);
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.shared_prompts, std::vector<std::string>{"yes"});
}

TEST(VerifyNoOverlapTest, OriginalSplitFails) {
  LosoSplit s = ExampleSplit();
  EXPECT_FALSE(VerifyNoOverlap(s.train, s.test).pass);
}

TEST(SweepTest, ZeroFractionRetainsNoOverlappedTest) {
  LosoSplit s;
  s.target_speaker = "T";
  int id = 0;
  for (const char* p : {"a", "b", "c d"}) {
    for (int i = 0; i < 4; ++i) s.train.push_back(U(std::to_string(id++), "A", p));
    s.test.push_back(U(std::to_string(id++), "T", p));
  }
  const std::vector<double> fs = {0.0};
  auto rows = SweepF(s, fs);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].test, 0u);
  EXPECT_EQ(rows[0].train, 12u);
}

TEST(SweepTest, DisjointTestKeepsEverythingAtFullFraction) {
  LosoSplit s;
  s.target_speaker = "T";
  s.train = {U("1", "A", "a"), U("2", "A", "b c")};
  s.test = {U("3", "T", "x"), U("4", "T", "y z")};
  const std::vector<double> fs = {1.0};
  auto rows = SweepF(s, fs);
  EXPECT_EQ(rows[0].train, 2u);
  EXPECT_EQ(rows[0].test, 2u);
  EXPECT_EQ(rows[0].total, 4u);
}

TEST(SweepTest, RejectsOutOfRangeFraction) {
  const std::vector<double> fs = {1.2};
  EXPECT_THROW(SweepF(ExampleSplit(), fs), UsageError);
}

// Random-corpus properties: no overlap, per-category floor, conservation,
// optimality against an independent DP, monotone sweep, determinism.
class RandomSplitTest : public ::testing::TestWithParam<int> {};

TEST_P(RandomSplitTest, Properties) {
  std::mt19937 rng(static_cast<std::uint32_t>(GetParam()));
  testing::RandomCorpusSpec spec;
  spec.speakers = 3 + GetParam() % 8;
  spec.utterances = 60 + 37 * GetParam();
  spec.prompts = 20 + 7 * GetParam();
  CorpusManifest m = testing::RandomCorpus(rng, spec);
  const std::string target = m.DysarthricSpeakers().front();
  LosoSplit split = BuildLosoSplit(m, target);

  std::vector<double> fs = {0.0, 0.2, 0.4, 0.55, 0.7, 0.9, 1.0};
  std::size_t last_train = SIZE_MAX, last_test = 0;
  for (double f : fs) {
    for (Weighting w : {Weighting::kUtterances, Weighting::kUniquePrompts}) {
      SplitResult r = PartitionSplit(split, {.f = f, .weighting = w});
      ASSERT_TRUE(VerifyNoOverlap(r).pass);
      EXPECT_EQ(r.train.size() + r.test.size() + r.dropped,
                split.train.size() + split.test.size());
      PartitionProblem problem = BuildPartitionProblem(split, f, w);
      auto [words, sentences] = DecomposeByCategory(problem);
      for (const PartitionProblem* sub : {&words, &sentences}) {
        std::int64_t kept = 0;
        std::set<std::string> seen;
        std::vector<testing::OracleItem> oracle_items;
        for (const Utterance& u : r.test) {
          if (u.category != (sub == &words ? PromptCategory::kIsolatedWord
                                           : PromptCategory::kSentence)) {
            continue;
          }
          if (w == Weighting::kUtterances) {
            ++kept;
          } else if (seen.insert(u.normalized_prompt).second) {
            ++kept;
          }
        }
        EXPECT_GE(kept, sub->floor) << "f=" << f;
        for (const PromptItem& item : sub->items) {
          oracle_items.push_back({sub->TrainWeight(item), sub->TestWeight(item)});
        }
        Assignment a = SolvePartition(*sub);
        EXPECT_EQ(a.objective_value,
                  testing::ExactTestWeightDp(oracle_items, sub->floor).objective);
      }
      if (w == Weighting::kUtterances) {
        EXPECT_LE(r.train.size(), last_train) << "f=" << f;
        EXPECT_GE(r.test.size(), last_test) << "f=" << f;
        last_train = r.train.size();
        last_test = r.test.size();
      }
    }
  }
  SplitResult a = PartitionSplit(split);
  SplitResult b = PartitionSplit(split);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomSplitTest, ::testing::Range(1, 21));

TEST(PartitionSplitTest, BranchAndBoundAgreesWithCoverDp) {
  std::mt19937 rng(99);
  CorpusManifest m = testing::RandomCorpus(rng, {.speakers = 6,
                                                 .utterances = 400,
                                                 .prompts = 80});
  LosoSplit split = BuildLosoSplit(m, m.DysarthricSpeakers().front());
  SplitResult dp = PartitionSplit(split);
  SplitResult bnb =
      PartitionSplit(split, {.method = SolveMethod::kBranchAndBound});
  EXPECT_EQ(dp.train, bnb.train);
  EXPECT_EQ(dp.test, bnb.test);
}

TEST(WriteSummaryTest, TableLayout) {
  SplitResult r;
  r.target_speaker = "M01";
  r.train_before = 5;
  r.test_before = 3;
  r.train = {U("1", "A", "a")};
  r.test = {U("2", "M01", "b"), U("3", "M01", "c")};
  std::ostringstream out;
  WriteSummary(out, std::span<const SplitResult>(&r, 1));
  EXPECT_EQ(out.str(),
            "speaker\tside\tbefore\tafter\nM01\ttrain\t5\t1\nM01\ttest\t3\t2\n");
}

}  // namespace
}  // namespace promptsplit
