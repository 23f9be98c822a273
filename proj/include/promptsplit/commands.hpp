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

// Subcommand implementations behind the promptsplit binary. Each returns a
// process exit status and throws the library's error types; RunGuarded maps
// those onto exit codes (usage 1, data 2, infeasible 3).

#ifndef PROMPTSPLIT_COMMANDS_HPP_
#define PROMPTSPLIT_COMMANDS_HPP_

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "promptsplit/corpus.hpp"
#include "promptsplit/error.hpp"
#include "promptsplit/eval.hpp"
#include "promptsplit/nbest.hpp"
#include "promptsplit/ngram.hpp"
#include "promptsplit/overlap.hpp"
#include "promptsplit/text.hpp"

namespace promptsplit {

struct RunConfig {
  std::string manifest;
  std::string speaker;
  ValidationConfig validation;
  double f = kDefaultFraction;
  Weighting weighting = Weighting::kUtterances;
  SolveMethod method = SolveMethod::kCoverDp;
  int order = 3;
  OovPolicy oov_policy = OovPolicy::kScoreAsUnk;
  std::string out = ".";
  bool strict = false;

  std::vector<double> f_values;  // sweep; empty means 0, 0.05, ..., 1
  std::string dir;               // verify: a split run directory
  std::string text;              // lm train / lm eval: plain text instead
  std::string lm;                // lm eval / rescore: ARPA model
  std::string nbest;             // rescore
  double lm_weight = 1.0;
  std::string hypotheses;        // score
  std::string scores;            // report
  std::vector<std::string> group_by = {"severity", "category"};
};

namespace internal {

inline std::ifstream OpenInput(const std::string& path) {
  if (path.empty()) throw UsageError("missing input path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open for reading");
  return in;
}

inline void WriteFile(const std::filesystem::path& path,
                      const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) throw DataError(path.string() + ": write failed");
}

inline std::filesystem::path EnsureDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw UsageError("output directory " + dir.string() +
                     " is not writable: " + ec.message());
  }
  return dir;
}

inline CorpusManifest LoadManifest(const std::string& path) {
  if (path.empty()) throw UsageError("--manifest is required");
  std::ifstream in = OpenInput(path);
  return ParseManifest(in, ManifestFormat::kTsv, path);
}

inline void RequireSpeaker(const RunConfig& config) {
  if (config.speaker.empty()) throw UsageError("--speaker is required");
}

inline std::string RunName(const std::string& speaker, double f) {
  return speaker + "_f" + FormatShortest(f);
}

// Normalized text, one line per utterance.
inline TokenLines PromptLines(std::span<const Utterance> utterances) {
  TokenLines lines;
  for (const Utterance& u : utterances) {
    lines.push_back(SplitWhitespace(u.normalized_prompt));
  }
  return lines;
}

inline TokenLines NormalizedTextFile(const std::string& path) {
  std::ifstream in = OpenInput(path);
  TokenLines lines;
  std::string line;
  while (ReadLine(in, line)) {
    auto tokens = SplitWhitespace(NormalizePrompt(line));
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  return lines;
}

inline KneserNeyModel LoadModel(const std::string& path) {
  if (path.empty()) throw UsageError("--lm is required");
  std::ifstream in = OpenInput(path);
  return ReadArpa(in, path);
}

inline std::vector<double> DefaultGrid() {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
  return grid;
}

}  // namespace internal

inline void ValidateConfig(const RunConfig& config) {
  CheckFraction(config.f);
  for (double f : config.f_values) CheckFraction(f);
  if (config.order < 2) throw UsageError("--order must be >= 2");
  if (!(config.lm_weight >= 0.0)) throw UsageError("--lm-weight must be >= 0");
}

// Per-speaker utterance counts and prompt overlap with the rest of the
// corpus.
inline int CmdInspect(const RunConfig& config, std::ostream& out,
                      std::ostream& /*err*/) {
  CorpusManifest manifest = internal::LoadManifest(config.manifest);
  out << "speaker\tseverity\tutterances\tprompt_overlap\n";
  for (const std::string& speaker : manifest.DysarthricSpeakers()) {
    LosoSplit split = BuildLosoSplit(manifest, speaker, config.validation);
    OverlapStats stats = OverlapReport(split);
    out << speaker << '\t'
        << SeverityDisplayName(*manifest.SeverityOf(speaker)) << '\t'
        << stats.test_utterances << '\t'
        << FormatFixed(stats.overlap_percent, 1) << "%\n";
  }
  return 0;
}

// Writes <out>/<speaker>_f<f>/{train,test,summary}.tsv.
inline int CmdSplit(const RunConfig& config, std::ostream& out,
                    std::ostream& err) {
  ValidateConfig(config);
  internal::RequireSpeaker(config);
  CorpusManifest manifest = internal::LoadManifest(config.manifest);
  LosoSplit split = BuildLosoSplit(manifest, config.speaker, config.validation);
  SplitResult result = PartitionSplit(
      split, {.f = config.f, .weighting = config.weighting,
              .method = config.method});
  VerificationReport check = VerifyNoOverlap(result);
  if (!check.pass) {
    throw DataError("split still shares " +
                    std::to_string(check.shared_prompts.size()) +
                    " prompts between train and test");
  }
  if (result.test.empty()) {
    err << "warning: f=" << FormatShortest(config.f)
        << " leaves an empty test set for " << config.speaker << "\n";
  }
  auto dir = internal::EnsureDir(std::filesystem::path(config.out) /
                                 internal::RunName(config.speaker, config.f));
  std::ostringstream train, test, summary;
  WriteUtterances(train, result.train);
  WriteUtterances(test, result.test);
  WriteSummary(summary, std::span<const SplitResult>(&result, 1));
  internal::WriteFile(dir / "train.tsv", train.str());
  internal::WriteFile(dir / "test.tsv", test.str());
  internal::WriteFile(dir / "summary.tsv", summary.str());
  out << summary.str();
  out << "verify\tpass\t" << dir.string() << "\n";
  return 0;
}

// Re-checks a split directory written by CmdSplit. Exit 2 on any shared
// prompt.
inline int CmdVerify(const RunConfig& config, std::ostream& out,
                     std::ostream& /*err*/) {
  if (config.dir.empty()) throw UsageError("--dir is required");
  std::filesystem::path dir(config.dir);
  CorpusManifest train = internal::LoadManifest((dir / "train.tsv").string());
  CorpusManifest test = internal::LoadManifest((dir / "test.tsv").string());
  VerificationReport report =
      VerifyNoOverlap(train.utterances(), test.utterances());
  out << (report.pass ? "pass" : "fail") << '\t' << train.utterances().size()
      << " train\t" << test.utterances().size() << " test\t"
      << report.shared_prompts.size() << " shared prompts\n";
  for (const auto& p : report.shared_prompts) out << "shared\t" << p << "\n";
  return report.pass ? 0 : 2;
}

// Retention against f as CSV, written to <out>/<speaker>_sweep/sweep.csv.
inline int CmdSweep(const RunConfig& config, std::ostream& out,
                    std::ostream& /*err*/) {
  ValidateConfig(config);
  internal::RequireSpeaker(config);
  CorpusManifest manifest = internal::LoadManifest(config.manifest);
  LosoSplit split = BuildLosoSplit(manifest, config.speaker, config.validation);
  std::vector<double> grid =
      config.f_values.empty() ? internal::DefaultGrid() : config.f_values;
  auto rows = SweepF(split, grid,
                     {.weighting = config.weighting, .method = config.method});
  std::ostringstream csv;
  csv << "f_value,train,test,total\n";
  for (const SweepRow& r : rows) {
    csv << FormatShortest(r.f) << ',' << r.train << ',' << r.test << ','
        << r.total << '\n';
  }
  auto dir = internal::EnsureDir(std::filesystem::path(config.out) /
                                 (config.speaker + "_sweep"));
  internal::WriteFile(dir / "sweep.csv", csv.str());
  out << csv.str();
  return 0;
}

// Trains on --text, or on manifest prompts minus the target and its
// validation speaker. Writes <out>/lm.arpa.
inline int CmdLmTrain(const RunConfig& config, std::ostream& out,
                      std::ostream& /*err*/) {
  ValidateConfig(config);
  TokenLines lines;
  if (!config.text.empty()) {
    lines = internal::NormalizedTextFile(config.text);
  } else {
    CorpusManifest manifest = internal::LoadManifest(config.manifest);
    std::vector<Utterance> keep;
    const std::string& validation =
        config.validation.SpeakerFor(config.speaker);
    for (const Utterance& u : manifest.utterances()) {
      if (!config.speaker.empty() &&
          (u.speaker_id == config.speaker || u.speaker_id == validation)) {
        continue;
      }
      keep.push_back(u);
    }
    lines = internal::PromptLines(keep);
  }
  KneserNeyModel model = TrainKneserNey(CountNgrams(lines, config.order));
  auto dir = internal::EnsureDir(config.out);
  std::ostringstream arpa;
  WriteArpa(model, arpa);
  internal::WriteFile(dir / "lm.arpa", arpa.str());
  out << "lm\t" << (dir / "lm.arpa").string() << "\torder " << model.order()
      << "\t" << lines.size() << " sentences";
  for (int k = 1; k <= model.order(); ++k) {
    out << "\t" << k << "-grams " << model.Size(k);
  }
  out << "\n";
  return 0;
}

namespace internal {

struct LmEvalRow {
  std::string averaging;
  OovPolicy policy;
  double perplexity = 0.0;
  double oov_rate = 0.0;
  std::int64_t sentences = 0;
  std::int64_t tokens = 0;
  std::int64_t oov_tokens = 0;
};

inline std::string_view PolicyName(OovPolicy p) {
  return p == OovPolicy::kScoreAsUnk ? "unk" : "exclude";
}

}  // namespace internal

// Perplexity and OOV rate, pooled over all tokens and as a per-speaker
// mean, under both OOV policies. Writes <out>/lm_eval.tsv.
inline int CmdLmEval(const RunConfig& config, std::ostream& out,
                     std::ostream& /*err*/) {
  KneserNeyModel model = internal::LoadModel(config.lm);
  std::map<std::string, TokenLines> by_speaker;
  TokenLines all;
  if (!config.text.empty()) {
    all = internal::NormalizedTextFile(config.text);
  } else {
    CorpusManifest manifest = internal::LoadManifest(config.manifest);
    for (const Utterance& u : manifest.utterances()) {
      if (!config.speaker.empty() && u.speaker_id != config.speaker) continue;
      auto tokens = SplitWhitespace(u.normalized_prompt);
      by_speaker[u.speaker_id].push_back(tokens);
      all.push_back(std::move(tokens));
    }
  }
  if (all.empty()) throw DataError("no evaluation text");

  std::vector<internal::LmEvalRow> rows;
  std::vector<OovPolicy> policies{config.oov_policy};
  policies.push_back(config.oov_policy == OovPolicy::kScoreAsUnk
                         ? OovPolicy::kExclude
                         : OovPolicy::kScoreAsUnk);
  for (OovPolicy policy : policies) {
    EvalStats pooled = Perplexity(model, all, policy);
    rows.push_back({"pooled", policy, pooled.perplexity, pooled.oov_rate,
                    pooled.sentences, pooled.token_count, pooled.oov_tokens});
    if (by_speaker.empty()) continue;
    internal::LmEvalRow macro{"speaker_mean", policy};
    for (const auto& [speaker, lines] : by_speaker) {
      EvalStats s = Perplexity(model, lines, policy);
      macro.perplexity += s.perplexity / static_cast<double>(by_speaker.size());
      macro.oov_rate += s.oov_rate / static_cast<double>(by_speaker.size());
      macro.sentences += s.sentences;
      macro.tokens += s.token_count;
      macro.oov_tokens += s.oov_tokens;
    }
    rows.push_back(macro);
  }

  std::string name = std::filesystem::path(config.lm).stem().string();
  std::ostringstream tsv;
  tsv << "lm\taveraging\toov_policy\tperplexity\toov_rate\tsentences\ttokens"
         "\toov_tokens\n";
  for (const auto& r : rows) {
    tsv << name << '\t' << r.averaging << '\t' << internal::PolicyName(r.policy)
        << '\t' << FormatFixed(r.perplexity, 2) << '\t'
        << FormatFixed(100.0 * r.oov_rate, 2) << "%\t" << r.sentences << '\t'
        << r.tokens << '\t' << r.oov_tokens << '\n';
  }
  auto dir = internal::EnsureDir(config.out);
  internal::WriteFile(dir / "lm_eval.tsv", tsv.str());

  std::vector<std::vector<std::string>> cells{
      {"Language Model", "Avg. Perplexity", "OOV rate"}};
  for (const auto& r : rows) {
    if (r.policy != config.oov_policy) continue;
    cells.push_back({name + " (" + r.averaging + ")",
                     FormatFixed(r.perplexity, 2),
                     FormatFixed(100.0 * r.oov_rate, 2) + "%"});
  }
  WriteAlignedTable(out, cells, 1);
  return 0;
}

// Writes <out>/rescored.tsv (every hypothesis, new order) and <out>/hyp.tsv
// (the new best per utterance). Hypotheses are normalized before scoring
// and written normalized.
inline int CmdRescore(const RunConfig& config, std::ostream& out,
                      std::ostream& /*err*/) {
  ValidateConfig(config);
  KneserNeyModel model = internal::LoadModel(config.lm);
  if (config.nbest.empty()) throw UsageError("--nbest is required");
  std::ifstream in = internal::OpenInput(config.nbest);
  std::vector<NBestList> lists = ReadNBest(in, config.nbest);
  std::ostringstream ranked, best;
  ranked << "utterance_id\trank\toriginal_rank\tacoustic_score\tlm_log10"
            "\ttotal\thypothesis\n";
  best << "utterance_id\thypothesis\n";
  for (const NBestList& list : lists) {
    NBestList normalized = list;
    for (auto& e : normalized) e.hypothesis = NormalizePrompt(e.hypothesis);
    auto result = RescoreNBest(model, normalized, config.lm_weight);
    for (std::size_t i = 0; i < result.size(); ++i) {
      const auto& r = result[i];
      ranked << r.entry.utterance_id << '\t' << i + 1 << '\t' << r.entry.rank
             << '\t' << FormatShortest(r.entry.acoustic_score) << '\t'
             << FormatFixed(r.lm_log10, 6) << '\t' << FormatFixed(r.total, 6)
             << '\t' << r.entry.hypothesis << '\n';
    }
    best << result[0].entry.utterance_id << '\t' << result[0].entry.hypothesis
         << '\n';
  }
  auto dir = internal::EnsureDir(config.out);
  internal::WriteFile(dir / "rescored.tsv", ranked.str());
  internal::WriteFile(dir / "hyp.tsv", best.str());
  out << "rescored\t" << lists.size() << " utterances\t"
      << (dir / "hyp.tsv").string() << "\n";
  return 0;
}

// Per-utterance WER into <out>/scores.tsv. In strict mode a reference
// without a hypothesis makes the command fail with exit status 2.
inline int CmdScore(const RunConfig& config, std::ostream& out,
                    std::ostream& err) {
  CorpusManifest manifest = internal::LoadManifest(config.manifest);
  if (config.hypotheses.empty()) throw UsageError("--hyp is required");
  std::ifstream in = internal::OpenInput(config.hypotheses);
  HypothesisSet hyps = LoadHypotheses(in, config.hypotheses);
  std::vector<Utterance> refs;
  for (const Utterance& u : manifest.utterances()) {
    if (config.speaker.empty() || u.speaker_id == config.speaker) {
      refs.push_back(u);
    }
  }
  if (refs.empty()) throw DataError("no reference utterances to score");
  ScoredSet scored = ScoreHypotheses(refs, hyps);
  for (const auto& w : scored.warnings) err << "warning: " << w << "\n";
  std::ostringstream tsv;
  WriteScores(tsv, scored);
  auto dir = internal::EnsureDir(config.out);
  internal::WriteFile(dir / "scores.tsv", tsv.str());
  Report overall = Aggregate(scored, {});
  out << "utterances\t" << overall.overall.utterances << "\tmissing\t"
      << scored.missing << "\twer\t" << FormatPercent(overall.overall.total.wer())
      << "%\n";
  if (config.strict && scored.missing > 0) {
    err << "error: " << scored.missing
        << " reference utterances have no hypothesis (strict mode)\n";
    return 2;
  }
  return 0;
}

// Pooled WER tables from a scores file: <out>/report.tsv and report.txt.
inline int CmdReport(const RunConfig& config, std::ostream& out,
                     std::ostream& /*err*/) {
  std::vector<GroupKey> keys;
  for (const auto& k : config.group_by) keys.push_back(ParseGroupKey(k));
  if (config.scores.empty()) throw UsageError("--scores is required");
  std::ifstream in = internal::OpenInput(config.scores);
  ScoredSet scored = ReadScores(in, config.scores);
  Report report = Aggregate(scored, keys);
  std::ostringstream tsv, text;
  WriteReportTsv(tsv, report);
  WriteReportText(text, report);
  text << "\n";
  WriteAlignedTable(text, SeverityByCategory(scored), 1);
  auto dir = internal::EnsureDir(config.out);
  internal::WriteFile(dir / "report.tsv", tsv.str());
  internal::WriteFile(dir / "report.txt", text.str());
  out << text.str();
  return 0;
}

inline int ExitCodeFor(const std::exception& e) {
  if (dynamic_cast<const InfeasibleError*>(&e)) return 3;
  if (dynamic_cast<const UsageError*>(&e)) return 1;
  // Data errors, I/O failures and solver limits.
  return 2;
}

// Runs a command, reporting any error on `err` with its exit status.
inline int RunGuarded(const std::function<int()>& command, std::ostream& err) {
  try {
    return command();
  } catch (const std::exception& e) {
    int code = ExitCodeFor(e);
    err << (code == 3 ? "infeasible: " : code == 1 ? "usage: " : "error: ")
        << e.what() << "\n";
    return code;
  }
}

}  // namespace promptsplit

#endif  // PROMPTSPLIT_COMMANDS_HPP_
