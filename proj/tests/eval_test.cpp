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

#include "promptsplit/eval.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace promptsplit {
namespace {

using Tokens = std::vector<std::string>;

TEST(WerTest, Identity) {
  Tokens r = SplitWhitespace("the quick brown fox");
  WerBreakdown b = Wer(r, r);
  EXPECT_EQ(b.errors(), 0);
  EXPECT_EQ(FormatPercent(b.wer()), "0.0");
}

TEST(WerTest, EmptyHypothesisIsAllDeletions) {
  Tokens r = SplitWhitespace("one two three four five");
  WerBreakdown b = Wer(r, {});
  EXPECT_EQ(b.deletions, 5);
  EXPECT_EQ(b.substitutions + b.insertions, 0);
  EXPECT_EQ(FormatPercent(b.wer()), "100.0");
}

TEST(WerTest, EmptyReferenceThrows) {
  EXPECT_THROW(Wer({}, SplitWhitespace("a")), DataError);
}

TEST(WerTest, PicturePromptExample) {
  Tokens r = SplitWhitespace(
      "he slowly takes a short walk in the open air each day");
  Tokens h = SplitWhitespace("he shlly takes a wall in the week a eh day");
  WerBreakdown b = Wer(r, h);
  auto oracle = testing::MostSubstitutions(r, h);
  EXPECT_EQ(static_cast<std::size_t>(b.errors()), testing::EditDistance(r, h));
  EXPECT_EQ(static_cast<std::size_t>(b.errors()), oracle.cost);
  EXPECT_EQ(static_cast<std::size_t>(b.substitutions), oracle.substitutions);
  EXPECT_EQ(b.reference_length, 12);
  // slowly->shlly, short->wall, open->week, air->a, each->eh; walk deleted.
  EXPECT_EQ(b.substitutions, 5);
  EXPECT_EQ(b.deletions, 1);
  EXPECT_EQ(b.insertions, 0);
  EXPECT_EQ(FormatPercent(b.wer()), "50.0");
}

TEST(WerTest, SubstitutionPreferredOverDeleteInsert) {
  WerBreakdown b = Wer(SplitWhitespace("a b"), SplitWhitespace("a c"));
  EXPECT_EQ(b.substitutions, 1);
  EXPECT_EQ(b.deletions + b.insertions, 0);
  b = Wer(SplitWhitespace("a"), SplitWhitespace("b a c"));
  EXPECT_EQ(b.insertions, 2);
  EXPECT_EQ(b.wer(), 2.0);
}

TEST(WerTest, MatchesOraclesOnRandomPairs) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t vocab = 2 + testing::Uniform(rng, 6);
    auto r = testing::RandomTokenLines(rng, 1, vocab, 12)[0];
    Tokens h;
    std::size_t hl = testing::Uniform(rng, 14);
    for (std::size_t i = 0; i < hl; ++i) {
      h.push_back(testing::PseudoWord(testing::Uniform(rng, vocab)));
    }
    WerBreakdown b = Wer(r, h);
    auto oracle = testing::MostSubstitutions(r, h);
    ASSERT_EQ(static_cast<std::size_t>(b.errors()), testing::EditDistance(r, h));
    ASSERT_EQ(static_cast<std::size_t>(b.substitutions), oracle.substitutions);
    ASSERT_EQ(b.deletions - b.insertions,
              static_cast<std::int64_t>(r.size()) -
                  static_cast<std::int64_t>(h.size()));
    ASSERT_LE(b.substitutions + b.deletions, b.reference_length);
    double lower = std::abs(static_cast<double>(r.size()) -
                            static_cast<double>(h.size())) /
                   static_cast<double>(r.size());
    ASSERT_GE(b.wer(), lower);
  }
}

std::vector<Utterance> References() {
  return {MakeUtterance("u1", "M01", Severity::kSevere, "the cat sat"),
          MakeUtterance("u2", "M01", Severity::kSevere, "dog"),
          MakeUtterance("u3", "F04", Severity::kMild, "Yes, I agree."),
          MakeUtterance("u4", "F03", Severity::kModerate, "up")};
}

TEST(HypothesisTest, LoadsKeyedRows) {
  std::istringstream in("utterance_id\thypothesis\nu1\tthe cat\nu2\tdog\nu3\t\n");
  HypothesisSet h = LoadHypotheses(in, "hyp.tsv");
  ASSERT_EQ(h.text.size(), 3u);
  EXPECT_EQ(h.text["u1"], "the cat");
  EXPECT_EQ(h.text["u3"], "");
  EXPECT_EQ(h.line["u2"], 3u);
}

TEST(HypothesisTest, DuplicateNamesBothLines) {
  std::istringstream in("u1\ta\nu2\tb\nu1\tc\n");
  try {
    LoadHypotheses(in, "hyp.tsv");
    FAIL();
  } catch (const DataError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("lines 1 and 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("hyp.tsv:3"), std::string::npos) << msg;
  }
}

TEST(HypothesisTest, NBestKeepsRankOne) {
  std::ostringstream text;
  for (int u = 0; u < 3; ++u) {
    for (int rank = 1; rank <= 50; ++rank) {
      text << "utt" << u << "\t" << rank << "\t" << -rank << "\thyp " << u
           << " " << rank << "\n";
    }
  }
  std::istringstream in(text.str());
  HypothesisSet h = LoadHypotheses(in, "nbest.tsv");
  ASSERT_EQ(h.text.size(), 3u);
  EXPECT_EQ(h.text["utt2"], "hyp 2 1");
  std::istringstream bad("u1\tx\t1\ta\n");
  EXPECT_THROW(LoadHypotheses(bad, "nbest.tsv"), DataError);
  std::istringstream three("u1\t1\ta\n");
  EXPECT_THROW(LoadHypotheses(three, "x.tsv"), DataError);
}

TEST(ScoreTest, NormalizesAndFlagsGaps) {
  std::istringstream in("u1\tThe cat, sat!\nu2\tdog\nu3\tyes i\nzz\tghost\n");
  ScoredSet s = ScoreHypotheses(References(), LoadHypotheses(in, "h"));
  ASSERT_EQ(s.utterances.size(), 4u);
  EXPECT_EQ(s.utterances[0].breakdown.errors(), 0);
  EXPECT_EQ(s.utterances[2].breakdown.deletions, 1);
  EXPECT_TRUE(s.utterances[3].missing_hypothesis);
  EXPECT_EQ(s.utterances[3].breakdown.deletions, 1);
  EXPECT_EQ(s.missing, 1u);
  EXPECT_EQ(s.unknown, 1u);
  EXPECT_EQ(s.warnings.size(), 2u);
}

ScoredUtterance Scored(std::string speaker, Severity sev, PromptCategory cat,
                       std::int64_t errors, std::int64_t n) {
  ScoredUtterance s{"id", std::move(speaker), sev, cat};
  s.breakdown.substitutions = errors;
  s.breakdown.reference_length = n;
  return s;
}

TEST(AggregateTest, SingleUtterance) {
  ScoredSet set;
  set.utterances.push_back(
      Scored("M01", Severity::kSevere, PromptCategory::kSentence, 1, 2));
  Report r = Aggregate(set, {GroupKey::kSeverity});
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(FormatPercent(r.rows[0].total.wer()), "50.0");
}

TEST(AggregateTest, PooledNotAveraged) {
  ScoredSet set;
  set.utterances.push_back(
      Scored("M01", Severity::kSevere, PromptCategory::kSentence, 1, 10));
  set.utterances.push_back(
      Scored("F04", Severity::kMild, PromptCategory::kSentence, 3, 10));
  Report r = Aggregate(set, {GroupKey::kSeverity});
  EXPECT_EQ(FormatPercent(r.overall.total.wer()), "20.0");
  // Pooling differs from the mean when lengths differ.
  set.utterances[1].breakdown.reference_length = 30;
  r = Aggregate(set, {GroupKey::kSeverity});
  EXPECT_EQ(FormatPercent(r.overall.total.wer()), "10.0");
}

TEST(AggregateTest, RowOrderAndConservation) {
  ScoredSet set;
  auto iw = PromptCategory::kIsolatedWord;
  auto st = PromptCategory::kSentence;
  set.utterances = {Scored("F04", Severity::kMild, st, 1, 4),
                    Scored("M01", Severity::kSevere, st, 2, 4),
                    Scored("F03", Severity::kModerate, iw, 1, 1),
                    Scored("M01", Severity::kSevere, iw, 0, 1),
                    Scored("M05", Severity::kModerateSevere, iw, 1, 1),
                    Scored("F04", Severity::kMild, iw, 0, 1)};
  Report r = Aggregate(set, {GroupKey::kSeverity, GroupKey::kCategory});
  std::vector<std::string> order;
  for (const auto& row : r.rows) order.push_back(row.keys[0] + "/" + row.keys[1]);
  EXPECT_EQ(order, (std::vector<std::string>{"Severe/IW", "Severe/Sent",
                                             "M/S/IW", "Moderate/IW",
                                             "Mild/IW", "Mild/Sent"}));
  WerBreakdown sum;
  for (const auto& row : r.rows) sum += row.total;
  EXPECT_EQ(sum, r.overall.total);
  EXPECT_EQ(r.overall.utterances, 6u);
  // Equal-length members: pooled lies between min and max.
  Report by_speaker = Aggregate(set, {GroupKey::kSpeaker});
  EXPECT_EQ(by_speaker.rows[0].keys[0], "F03");
}

TEST(AggregateTest, UnknownKey) {
  EXPECT_THROW(ParseGroupKey("gender"), UsageError);
  EXPECT_EQ(ParseGroupKey("speaker"), GroupKey::kSpeaker);
}

TEST(AggregateTest, RendersTsvAndText) {
  ScoredSet set;
  set.utterances = {
      Scored("M01", Severity::kSevere, PromptCategory::kIsolatedWord, 1, 1),
      Scored("M01", Severity::kSevere, PromptCategory::kSentence, 1, 4)};
  Report r = Aggregate(set, {GroupKey::kCategory});
  std::ostringstream tsv, text;
  WriteReportTsv(tsv, r);
  WriteReportText(text, r);
  EXPECT_EQ(tsv.str(),
            "category\tutterances\tref_words\tsub\tdel\tins\twer\n"
            "IW\t1\t1\t1\t0\t0\t100.0\n"
            "Sent\t1\t4\t1\t0\t0\t25.0\n"
            "all\t2\t5\t2\t0\t0\t40.0\n");
  EXPECT_EQ(text.str(),
            "category  utterances  ref_words  sub  del  ins    wer\n"
            "IW                 1          1    1    0    0  100.0\n"
            "Sent               1          4    1    0    0   25.0\n"
            "all                2          5    2    0    0   40.0\n");
  auto pivot = SeverityByCategory(set);
  ASSERT_EQ(pivot.size(), 3u);
  EXPECT_EQ(pivot[1], (std::vector<std::string>{"Severe", "100.0", "25.0",
                                                "40.0"}));
}

TEST(ScoreFileTest, RoundTrip) {
  std::istringstream in("u1\tthe cat\nu2\tdog\nu3\tyes i agree\nu4\tup\n");
  ScoredSet s = ScoreHypotheses(References(), LoadHypotheses(in, "h"));
  std::ostringstream out;
  WriteScores(out, s);
  std::istringstream back(out.str());
  ScoredSet t = ReadScores(back, "scores.tsv");
  ASSERT_EQ(t.utterances.size(), s.utterances.size());
  for (std::size_t i = 0; i < s.utterances.size(); ++i) {
    EXPECT_EQ(t.utterances[i].breakdown, s.utterances[i].breakdown);
    EXPECT_EQ(t.utterances[i].severity, s.utterances[i].severity);
    EXPECT_EQ(t.utterances[i].category, s.utterances[i].category);
  }
  std::istringstream bad("nope\n");
  EXPECT_THROW(ReadScores(bad, "scores.tsv"), DataError);
}

}  // namespace
}  // namespace promptsplit
