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

// promptsplit command-line tool.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "promptsplit/commands.hpp"

namespace {

using promptsplit::RunConfig;

int Main(int argc, char** argv) {
  CLI::App app{"Leakage-free leave-one-speaker-out splits, n-gram LMs and WER."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; flags override it");

  RunConfig config;
  std::string weighting = "utterances";
  std::string oov = "unk";
  std::string solver = "dp";
  bool exclude_validation = false;

  app.add_option("--manifest", config.manifest, "Corpus manifest TSV");
  app.add_option("--speaker", config.speaker, "Target (test) speaker");
  app.add_option("--f", config.f, "Minimum fraction of test data kept")
      ->capture_default_str();
  app.add_option("--weighting", weighting, "Objective weights")
      ->check(CLI::IsMember({"utterances", "prompts"}))
      ->capture_default_str();
  app.add_option("--solver", solver, "Partition solver")
      ->check(CLI::IsMember({"dp", "bnb", "exhaustive"}))
      ->capture_default_str();
  app.add_flag("--exclude-validation", exclude_validation,
               "Drop the validation speaker from the training side");
  app.add_option("--order", config.order, "n-gram order")
      ->capture_default_str();
  app.add_option("--oov-policy", oov, "unk scores OOVs as <unk>")
      ->check(CLI::IsMember({"unk", "exclude"}))
      ->capture_default_str();
  app.add_option("--out", config.out, "Output directory")
      ->capture_default_str();
  app.add_flag("--strict", config.strict,
               "score: fail when a reference has no hypothesis");
  app.add_option("--f-values", config.f_values, "sweep: f grid")
      ->delimiter(',');
  app.add_option("--dir", config.dir, "verify: split run directory");
  app.add_option("--text", config.text, "lm: one sentence per line");
  app.add_option("--lm", config.lm, "ARPA model");
  app.add_option("--nbest", config.nbest, "rescore: n-best TSV");
  app.add_option("--lm-weight", config.lm_weight, "rescore: LM weight")
      ->capture_default_str();
  app.add_option("--hyp", config.hypotheses, "score: hypothesis TSV");
  app.add_option("--scores", config.scores, "report: scores.tsv");
  app.add_option("--group-by", config.group_by,
                 "report: severity, category, speaker")
      ->delimiter(',');

  auto* inspect = app.add_subcommand("inspect", "Per-speaker prompt overlap");
  auto* split = app.add_subcommand("split", "Overlap-free train/test split");
  auto* verify = app.add_subcommand("verify", "Check a split for overlap");
  auto* sweep = app.add_subcommand("sweep", "Retention against f");
  auto* lm = app.add_subcommand("lm", "n-gram language models");
  lm->require_subcommand(1);
  auto* lm_train = lm->add_subcommand("train", "Train a Kneser-Ney model");
  auto* lm_eval = lm->add_subcommand("eval", "Perplexity and OOV rate");
  auto* rescore = app.add_subcommand("rescore", "Rescore n-best lists");
  auto* score = app.add_subcommand("score", "Word error rate per utterance");
  auto* report = app.add_subcommand("report", "Pooled WER tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  config.weighting = weighting == "prompts"
                         ? promptsplit::Weighting::kUniquePrompts
                         : promptsplit::Weighting::kUtterances;
  config.oov_policy = oov == "exclude" ? promptsplit::OovPolicy::kExclude
                                       : promptsplit::OovPolicy::kScoreAsUnk;
  static const std::map<std::string, promptsplit::SolveMethod> kSolvers = {
      {"dp", promptsplit::SolveMethod::kCoverDp},
      {"bnb", promptsplit::SolveMethod::kBranchAndBound},
      {"exhaustive", promptsplit::SolveMethod::kExhaustive}};
  config.method = kSolvers.at(solver);
  if (exclude_validation) {
    config.validation.mode =
        promptsplit::ValidationConfig::Mode::kExclude;
  }

  using Command = int (*)(const RunConfig&, std::ostream&, std::ostream&);
  Command command = nullptr;
  if (*inspect) command = promptsplit::CmdInspect;
  if (*split) command = promptsplit::CmdSplit;
  if (*verify) command = promptsplit::CmdVerify;
  if (*sweep) command = promptsplit::CmdSweep;
  if (*lm_train) command = promptsplit::CmdLmTrain;
  if (*lm_eval) command = promptsplit::CmdLmEval;
  if (*rescore) command = promptsplit::CmdRescore;
  if (*score) command = promptsplit::CmdScore;
  if (*report) command = promptsplit::CmdReport;
  return promptsplit::RunGuarded(
      [&] { return command(config, std::cout, std::cerr); }, std::cerr);
}

}  // namespace

int main(int argc, char** argv) { return Main(argc, argv); }
