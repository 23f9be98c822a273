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

// Turns a leave-one-speaker-out split into the prompt-partition program,
// solves it per prompt category and applies the result.
//
// Every distinct normalized prompt i gets a train variable x_i (if it occurs
// in T_train) and a test variable y_i (if it occurs in T_test):
//
//   maximize    sum_i a_i x_i + sum_i b_i y_i
//   subject to  x_i + y_i <= 1
//               sum_i b_i y_i >= ceil(f * |T_test|)
//
// where a_i, b_i are utterance counts (Weighting::kUtterances) or 0/1
// indicators (Weighting::kUniquePrompts).

#ifndef PROMPTSPLIT_OVERLAP_HPP_
#define PROMPTSPLIT_OVERLAP_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "promptsplit/corpus.hpp"
#include "promptsplit/error.hpp"
#include "promptsplit/milp.hpp"
#include "promptsplit/text.hpp"

namespace promptsplit {

enum class Weighting { kUtterances, kUniquePrompts };

inline constexpr double kDefaultFraction = 0.55;

// f is handled as an exact decimal with nine places so that, e.g.,
// ceil(0.55 * 100) is 55 and not 56.
inline std::int64_t FractionNanos(double f) {
  return static_cast<std::int64_t>(std::llround(f * 1e9));
}

inline std::int64_t CeilFraction(double f, std::int64_t total) {
  constexpr std::int64_t kDen = 1'000'000'000;
  const __int128 num = static_cast<__int128>(FractionNanos(f)) * total;
  return static_cast<std::int64_t>((num + kDen - 1) / kDen);
}

inline void CheckFraction(double f) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw UsageError("f must lie in [0, 1], got " + FormatShortest(f));
  }
}

struct PromptItem {
  std::string prompt;
  std::int64_t train_count = 0;  // a_i, utterances
  std::int64_t test_count = 0;   // b_i, utterances
  PromptCategory category = PromptCategory::kIsolatedWord;

  friend bool operator==(const PromptItem&, const PromptItem&) = default;
};

struct PartitionProblem {
  std::vector<PromptItem> items;  // sorted by prompt
  double f = kDefaultFraction;
  Weighting weighting = Weighting::kUtterances;
  std::int64_t test_total = 0;
  std::int64_t floor = 0;

  std::int64_t TrainWeight(const PromptItem& item) const {
    return weighting == Weighting::kUtterances ? item.train_count
                                               : (item.train_count > 0);
  }
  std::int64_t TestWeight(const PromptItem& item) const {
    return weighting == Weighting::kUtterances ? item.test_count
                                               : (item.test_count > 0);
  }
};

namespace internal {

inline PartitionProblem MakeProblem(std::vector<PromptItem> items, double f,
                                    Weighting weighting) {
  PartitionProblem problem;
  problem.items = std::move(items);
  problem.f = f;
  problem.weighting = weighting;
  for (const PromptItem& item : problem.items) {
    problem.test_total += problem.TestWeight(item);
  }
  problem.floor = CeilFraction(f, problem.test_total);
  return problem;
}

}  // namespace internal

inline PartitionProblem BuildPartitionProblem(
    const LosoSplit& split, double f,
    Weighting weighting = Weighting::kUtterances) {
  CheckFraction(f);
  if (split.test.empty()) {
    throw DataError("speaker '" + split.target_speaker +
                    "' has no test utterances");
  }
  std::map<std::string, PromptItem> by_prompt;
  auto item_for = [&](const Utterance& u) -> PromptItem& {
    PromptItem& item = by_prompt[u.normalized_prompt];
    if (item.prompt.empty()) {
      item.prompt = u.normalized_prompt;
      item.category = u.category;
    }
    return item;
  };
  for (const Utterance& u : split.train) ++item_for(u).train_count;
  for (const Utterance& u : split.test) ++item_for(u).test_count;
  std::vector<PromptItem> items;
  items.reserve(by_prompt.size());
  for (auto& [prompt, item] : by_prompt) items.push_back(std::move(item));
  return internal::MakeProblem(std::move(items), f, weighting);
}

// Splits into (isolated-word, sentence) problems, each with its own floor.
inline std::pair<PartitionProblem, PartitionProblem> DecomposeByCategory(
    const PartitionProblem& problem) {
  std::vector<PromptItem> words;
  std::vector<PromptItem> sentences;
  for (const PromptItem& item : problem.items) {
    (item.category == PromptCategory::kIsolatedWord ? words : sentences)
        .push_back(item);
  }
  return {internal::MakeProblem(std::move(words), problem.f,
                                problem.weighting),
          internal::MakeProblem(std::move(sentences), problem.f,
                                problem.weighting)};
}

inline std::string TrainVariable(std::string_view prompt) {
  return "train:" + std::string(prompt);
}
inline std::string TestVariable(std::string_view prompt) {
  return "test:" + std::string(prompt);
}

inline milp::BinaryProgram ToBinaryProgram(const PartitionProblem& problem) {
  milp::BinaryProgram program;
  for (const PromptItem& item : problem.items) {
    const std::int64_t a = problem.TrainWeight(item);
    const std::int64_t b = problem.TestWeight(item);
    if (a > 0) {
      program.variables.push_back(TrainVariable(item.prompt));
      program.objective[program.variables.back()] = a;
    }
    if (b > 0) {
      program.variables.push_back(TestVariable(item.prompt));
      program.objective[program.variables.back()] = b;
      program.cover_weights[program.variables.back()] = b;
    }
    if (a > 0 && b > 0) {
      program.at_most_one_pairs.emplace_back(TrainVariable(item.prompt),
                                             TestVariable(item.prompt));
    }
  }
  program.cover_floor = problem.floor;
  return program;
}

enum class Decision { kTrain, kTest, kDrop };

inline std::string_view DecisionName(Decision d) {
  switch (d) {
    case Decision::kTrain: return "train";
    case Decision::kTest: return "test";
    case Decision::kDrop: return "drop";
  }
  return "drop";
}

struct Assignment {
  std::map<std::string, Decision> decisions;
  std::int64_t objective_value = 0;
  bool proven_optimal = false;
  milp::SolveStatus status = milp::SolveStatus::kInfeasible;
  std::int64_t nodes_explored = 0;
};

enum class SolveMethod { kCoverDp, kBranchAndBound, kExhaustive };

inline Assignment SolvePartition(const PartitionProblem& problem,
                                 SolveMethod method = SolveMethod::kCoverDp,
                                 const milp::SolverConfig& config = {}) {
  const milp::BinaryProgram program = ToBinaryProgram(problem);
  milp::Solution solution;
  switch (method) {
    case SolveMethod::kCoverDp:
      solution = milp::SolveWithCoverDp(program);
      break;
    case SolveMethod::kBranchAndBound:
      solution = milp::SolveBranchAndBound(program, config);
      break;
    case SolveMethod::kExhaustive:
      solution = milp::SolveExhaustive(program);
      break;
  }
  Assignment assignment;
  assignment.status = solution.status;
  assignment.nodes_explored = solution.nodes_explored;
  if (solution.status != milp::SolveStatus::kOptimal) return assignment;
  assignment.proven_optimal = true;
  assignment.objective_value = solution.objective_value;
  for (const PromptItem& item : problem.items) {
    auto value = [&](const std::string& id) {
      auto it = solution.values.find(id);
      return it == solution.values.end() ? 0 : it->second;
    };
    Decision d = Decision::kDrop;
    if (value(TrainVariable(item.prompt)) == 1) d = Decision::kTrain;
    if (value(TestVariable(item.prompt)) == 1) d = Decision::kTest;
    assignment.decisions.emplace(item.prompt, d);
  }
  return assignment;
}

struct SplitResult {
  std::string target_speaker;
  std::vector<Utterance> train;  // S_train
  std::vector<Utterance> test;   // S_test
  std::size_t train_before = 0;
  std::size_t test_before = 0;
  std::size_t dropped = 0;
};

inline SplitResult ApplyAssignment(const LosoSplit& split,
                                   const Assignment& words,
                                   const Assignment& sentences) {
  auto decide = [&](const Utterance& u) {
    const Assignment& primary =
        u.category == PromptCategory::kIsolatedWord ? words : sentences;
    const Assignment& other = &primary == &words ? sentences : words;
    auto it = primary.decisions.find(u.normalized_prompt);
    if (it != primary.decisions.end()) return it->second;
    it = other.decisions.find(u.normalized_prompt);
    if (it != other.decisions.end()) return it->second;
    throw DataError("prompt '" + u.normalized_prompt +
                    "' is missing from both assignments");
  };
  SplitResult result;
  result.target_speaker = split.target_speaker;
  result.train_before = split.train.size();
  result.test_before = split.test.size();
  for (const Utterance& u : split.train) {
    if (decide(u) == Decision::kTrain) {
      result.train.push_back(u);
    } else {
      ++result.dropped;
    }
  }
  for (const Utterance& u : split.test) {
    if (decide(u) == Decision::kTest) {
      result.test.push_back(u);
    } else {
      ++result.dropped;
    }
  }
  return result;
}

struct VerificationReport {
  std::vector<std::string> shared_prompts;  // sorted
  bool pass = true;
};

inline VerificationReport VerifyNoOverlap(std::span<const Utterance> train,
                                          std::span<const Utterance> test) {
  std::set<std::string> train_prompts;
  for (const Utterance& u : train) train_prompts.insert(u.normalized_prompt);
  std::set<std::string> shared;
  for (const Utterance& u : test) {
    if (train_prompts.count(u.normalized_prompt)) {
      shared.insert(u.normalized_prompt);
    }
  }
  VerificationReport report;
  report.shared_prompts.assign(shared.begin(), shared.end());
  report.pass = report.shared_prompts.empty();
  return report;
}

inline VerificationReport VerifyNoOverlap(const SplitResult& result) {
  return VerifyNoOverlap(result.train, result.test);
}

struct PartitionOptions {
  double f = kDefaultFraction;
  Weighting weighting = Weighting::kUtterances;
  SolveMethod method = SolveMethod::kCoverDp;
  milp::SolverConfig solver;
};

// Build, decompose, solve both categories and apply. Throws InfeasibleError
// if a category floor cannot be met, and std::runtime_error if the solver
// hit its node limit.
inline SplitResult PartitionSplit(const LosoSplit& split,
                                  const PartitionOptions& options = {}) {
  const PartitionProblem problem =
      BuildPartitionProblem(split, options.f, options.weighting);
  const auto [words, sentences] = DecomposeByCategory(problem);
  auto solve = [&](const PartitionProblem& sub, const char* label) {
    Assignment a = SolvePartition(sub, options.method, options.solver);
    if (a.status == milp::SolveStatus::kInfeasible) {
      std::int64_t reachable = 0;
      for (const PromptItem& item : sub.items) reachable += sub.TestWeight(item);
      throw InfeasibleError(
          std::string(label) + " floor " + std::to_string(sub.floor) +
          " exceeds the reachable test weight " + std::to_string(reachable) +
          "; maximum achievable f is " +
          FormatFixed(sub.test_total == 0
                          ? 1.0
                          : static_cast<double>(reachable) /
                                static_cast<double>(sub.test_total),
                      4));
    }
    if (a.status == milp::SolveStatus::kLimitExceeded) {
      throw std::runtime_error(std::string(label) +
                               " solve exceeded the node limit after " +
                               std::to_string(a.nodes_explored) + " nodes");
    }
    return a;
  };
  const Assignment word_assignment = solve(words, "isolated-word");
  const Assignment sentence_assignment = solve(sentences, "sentence");
  return ApplyAssignment(split, word_assignment, sentence_assignment);
}

struct SweepRow {
  double f = 0.0;
  std::size_t train = 0;
  std::size_t test = 0;
  std::size_t total = 0;
};

inline std::vector<SweepRow> SweepF(const LosoSplit& split,
                                    std::span<const double> f_values,
                                    PartitionOptions options = {}) {
  std::vector<SweepRow> rows;
  for (double f : f_values) {
    CheckFraction(f);
    options.f = f;
    SplitResult r = PartitionSplit(split, options);
    rows.push_back({f, r.train.size(), r.test.size(),
                    r.train.size() + r.test.size()});
  }
  return rows;
}

// Summary table: speaker, side, before, after.
inline void WriteSummary(std::ostream& out,
                         std::span<const SplitResult> results) {
  out << "speaker\tside\tbefore\tafter\n";
  for (const SplitResult& r : results) {
    out << r.target_speaker << "\ttrain\t" << r.train_before << '\t'
        << r.train.size() << '\n';
    out << r.target_speaker << "\ttest\t" << r.test_before << '\t'
        << r.test.size() << '\n';
  }
}

}  // namespace promptsplit

#endif  // PROMPTSPLIT_OVERLAP_HPP_
