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

// Corpus manifests, prompt normalization and leave-one-speaker-out splits.
//
// A manifest is a header-first TSV with the columns
//   utterance_id  speaker_id  severity  prompt  audio_path
// where severity is one of severe, moderate_severe, moderate, mild, control
// and audio_path may be empty. Audio paths are carried through untouched.

#ifndef PROMPTSPLIT_CORPUS_HPP_
#define PROMPTSPLIT_CORPUS_HPP_

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "promptsplit/error.hpp"
#include "promptsplit/text.hpp"

namespace promptsplit {

// Ordered from most to least impaired; reports sort by this order.
enum class Severity { kSevere, kModerateSevere, kModerate, kMild, kControl };

enum class PromptCategory { kIsolatedWord, kSentence };

inline std::string_view SeverityLabel(Severity severity) {
  switch (severity) {
    case Severity::kSevere: return "severe";
    case Severity::kModerateSevere: return "moderate_severe";
    case Severity::kModerate: return "moderate";
    case Severity::kMild: return "mild";
    case Severity::kControl: return "control";
  }
  return "control";
}

// Short names used in report tables.
inline std::string_view SeverityDisplayName(Severity severity) {
  switch (severity) {
    case Severity::kSevere: return "Severe";
    case Severity::kModerateSevere: return "M/S";
    case Severity::kModerate: return "Moderate";
    case Severity::kMild: return "Mild";
    case Severity::kControl: return "Control";
  }
  return "Control";
}

inline std::optional<Severity> ParseSeverity(std::string_view label) {
  static constexpr std::array<Severity, 5> kAll = {
      Severity::kSevere, Severity::kModerateSevere, Severity::kModerate,
      Severity::kMild, Severity::kControl};
  for (Severity s : kAll) {
    if (SeverityLabel(s) == label) return s;
  }
  return std::nullopt;
}

inline std::string_view CategoryLabel(PromptCategory category) {
  return category == PromptCategory::kIsolatedWord ? "IW" : "Sent";
}

// Lowercases ASCII letters, drops "[...]" annotations, replaces punctuation
// with spaces and collapses whitespace. An apostrophe survives only when it
// directly follows a word character, so "don't" and "u'" are kept while
// leading quotes are not. Bytes >= 0x80 pass through unchanged.
inline std::string NormalizePrompt(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  auto word_char = [](unsigned char c) {
    return std::isalnum(c) || c >= 0x80;
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(raw[i]);
    if (c == '[') {
      std::size_t close = raw.find(']', i + 1);
      if (close != std::string_view::npos) {
        i = close;
        pending_space = true;
        continue;
      }
    }
    const bool keep_apostrophe =
        c == '\'' && !pending_space && !out.empty() &&
        word_char(static_cast<unsigned char>(out.back()));
    if (word_char(c) || keep_apostrophe) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(c < 0x80 ? std::tolower(c) : c));
    } else {
      pending_space = true;
    }
  }
  return out;
}

// IsolatedWord iff the normalized prompt is a single token.
inline PromptCategory ClassifyPrompt(std::string_view normalized) {
  const std::vector<std::string> tokens = SplitWhitespace(normalized);
  if (tokens.empty()) throw DataError("cannot classify an empty prompt");
  return tokens.size() == 1 ? PromptCategory::kIsolatedWord
                            : PromptCategory::kSentence;
}

struct Utterance {
  std::string utterance_id;
  std::string speaker_id;
  Severity severity = Severity::kControl;
  std::string raw_prompt;
  std::string normalized_prompt;
  PromptCategory category = PromptCategory::kIsolatedWord;
  std::optional<std::string> audio_path;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

// Normalizes and classifies; throws DataError when nothing survives
// normalization.
inline Utterance MakeUtterance(std::string utterance_id, std::string speaker_id,
                               Severity severity, std::string raw_prompt,
                               std::optional<std::string> audio_path = {}) {
  Utterance u;
  u.normalized_prompt = NormalizePrompt(raw_prompt);
  if (u.normalized_prompt.empty()) {
    throw DataError("utterance '" + utterance_id +
                    "' has an empty prompt after normalization");
  }
  u.category = ClassifyPrompt(u.normalized_prompt);
  u.utterance_id = std::move(utterance_id);
  u.speaker_id = std::move(speaker_id);
  u.severity = severity;
  u.raw_prompt = std::move(raw_prompt);
  u.audio_path = std::move(audio_path);
  return u;
}

class CorpusManifest {
 public:
  CorpusManifest() = default;

  // Validates unique utterance ids and one severity per speaker.
  explicit CorpusManifest(std::vector<Utterance> utterances)
      : utterances_(std::move(utterances)) {
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < utterances_.size(); ++i) {
      const Utterance& u = utterances_[i];
      auto [it, inserted] = seen.emplace(u.utterance_id, i);
      if (!inserted) {
        throw DataError("duplicate utterance_id '" + u.utterance_id + "'");
      }
      auto [sit, fresh] = speakers_.emplace(u.speaker_id, u.severity);
      if (!fresh && sit->second != u.severity) {
        throw DataError("speaker '" + u.speaker_id +
                        "' listed with conflicting severities");
      }
    }
  }

  const std::vector<Utterance>& utterances() const { return utterances_; }
  const std::map<std::string, Severity>& speakers() const { return speakers_; }

  std::optional<Severity> SeverityOf(const std::string& speaker) const {
    auto it = speakers_.find(speaker);
    if (it == speakers_.end()) return std::nullopt;
    return it->second;
  }

  // Non-control speakers ordered by severity, then id.
  std::vector<std::string> DysarthricSpeakers() const {
    std::vector<std::pair<Severity, std::string>> keyed;
    for (const auto& [id, severity] : speakers_) {
      if (severity != Severity::kControl) keyed.emplace_back(severity, id);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::string> ids;
    for (auto& [severity, id] : keyed) ids.push_back(std::move(id));
    return ids;
  }

  std::size_t UniquePromptCount() const {
    std::set<std::string_view> prompts;
    for (const Utterance& u : utterances_) prompts.insert(u.normalized_prompt);
    return prompts.size();
  }

  friend bool operator==(const CorpusManifest&,
                         const CorpusManifest&) = default;

 private:
  std::vector<Utterance> utterances_;
  std::map<std::string, Severity> speakers_;
};

enum class ManifestFormat { kTsv };

inline constexpr std::array<std::string_view, 5> kManifestColumns = {
    "utterance_id", "speaker_id", "severity", "prompt", "audio_path"};

// Parses a header-first manifest TSV. Errors carry `source` and a 1-based
// line number.
inline CorpusManifest ParseManifest(std::istream& in,
                                    ManifestFormat format = ManifestFormat::kTsv,
                                    const std::string& source = "<manifest>") {
  (void)format;
  std::string line;
  std::size_t line_no = 0;
  if (!ReadLine(in, line)) throw DataError(source, 1, "missing header row");
  ++line_no;
  const std::vector<std::string> header = SplitTabs(line);
  if (header.size() != kManifestColumns.size() ||
      !std::equal(header.begin(), header.end(), kManifestColumns.begin())) {
    throw DataError(source, line_no,
                    "header must be: utterance_id speaker_id severity prompt "
                    "audio_path");
  }

  std::vector<Utterance> utterances;
  std::unordered_map<std::string, std::size_t> id_lines;
  std::unordered_map<std::string, std::pair<Severity, std::size_t>> speakers;
  while (ReadLine(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitTabs(line);
    if (fields.size() != kManifestColumns.size()) {
      throw DataError(source, line_no,
                      "expected 5 tab-separated columns, found " +
                          std::to_string(fields.size()));
    }
    auto [it, inserted] = id_lines.emplace(fields[0], line_no);
    if (!inserted) {
      throw DataError(source, line_no,
                      "duplicate utterance_id '" + fields[0] +
                          "' (first seen on line " +
                          std::to_string(it->second) + ")");
    }
    std::optional<Severity> severity = ParseSeverity(fields[2]);
    if (!severity) {
      throw DataError(source, line_no,
                      "unknown severity label '" + fields[2] + "'");
    }
    auto [sit, fresh] =
        speakers.emplace(fields[1], std::make_pair(*severity, line_no));
    if (!fresh && sit->second.first != *severity) {
      throw DataError(source, line_no,
                      "speaker '" + fields[1] +
                          "' has a different severity than on line " +
                          std::to_string(sit->second.second));
    }
    std::optional<std::string> audio;
    if (!fields[4].empty()) audio = std::move(fields[4]);
    try {
      utterances.push_back(MakeUtterance(std::move(fields[0]),
                                         std::move(fields[1]), *severity,
                                         std::move(fields[3]),
                                         std::move(audio)));
    } catch (const DataError& e) {
      throw DataError(source, line_no, e.what());
    }
  }
  return CorpusManifest(std::move(utterances));
}

inline void WriteUtterances(std::ostream& out,
                            std::span<const Utterance> utterances) {
  out << Join({kManifestColumns.begin(), kManifestColumns.end()}, "\t")
      << '\n';
  for (const Utterance& u : utterances) {
    out << u.utterance_id << '\t' << u.speaker_id << '\t'
        << SeverityLabel(u.severity) << '\t' << u.raw_prompt << '\t'
        << u.audio_path.value_or("") << '\n';
  }
}

inline void WriteManifest(std::ostream& out, const CorpusManifest& manifest) {
  WriteUtterances(out, manifest.utterances());
}

// Which speaker is held out for validation for a given target.
struct ValidationConfig {
  enum class Mode {
    // Validation speaker's utterances stay in T_train. This reproduces the
    // usual TORGO before-split counts, where train + test is the whole corpus.
    kKeepInTrain,
    // Validation speaker's utterances are removed from both sides.
    kExclude,
  };

  std::string primary = "F03";
  std::string fallback = "F04";  // used when the target is `primary`
  Mode mode = Mode::kKeepInTrain;

  const std::string& SpeakerFor(const std::string& target) const {
    return target == primary ? fallback : primary;
  }
};

struct LosoSplit {
  std::string target_speaker;
  std::string validation_speaker;
  ValidationConfig::Mode validation_mode = ValidationConfig::Mode::kKeepInTrain;
  std::vector<Utterance> train;  // T_train
  std::vector<Utterance> test;   // T_test
};

// Test = every utterance of `target`; train = everything else, including
// control speakers, minus the validation speaker when the mode excludes it.
inline LosoSplit BuildLosoSplit(const CorpusManifest& manifest,
                                const std::string& target,
                                const ValidationConfig& validation = {}) {
  std::optional<Severity> severity = manifest.SeverityOf(target);
  if (!severity) throw UsageError("unknown target speaker '" + target + "'");
  if (*severity == Severity::kControl) {
    throw UsageError("target speaker '" + target +
                     "' is a control speaker; controls are train-only");
  }
  LosoSplit split;
  split.target_speaker = target;
  split.validation_speaker = validation.SpeakerFor(target);
  split.validation_mode = validation.mode;
  if (split.validation_speaker == target) {
    throw UsageError("validation speaker must differ from the target");
  }
  const bool exclude_validation =
      validation.mode == ValidationConfig::Mode::kExclude;
  for (const Utterance& u : manifest.utterances()) {
    if (u.speaker_id == target) {
      split.test.push_back(u);
    } else if (!(exclude_validation &&
                 u.speaker_id == split.validation_speaker)) {
      split.train.push_back(u);
    }
  }
  return split;
}

struct OverlapStats {
  std::size_t test_utterances = 0;
  std::size_t overlapping_utterances = 0;  // test rows whose prompt is in train
  std::size_t shared_prompts = 0;          // distinct prompts on both sides
  double overlap_percent = 0.0;
};

inline OverlapStats ComputeOverlap(std::span<const Utterance> train,
                                   std::span<const Utterance> test) {
  std::set<std::string_view> train_prompts;
  for (const Utterance& u : train) train_prompts.insert(u.normalized_prompt);
  OverlapStats stats;
  stats.test_utterances = test.size();
  std::set<std::string_view> shared;
  for (const Utterance& u : test) {
    if (train_prompts.count(u.normalized_prompt)) {
      ++stats.overlapping_utterances;
      shared.insert(u.normalized_prompt);
    }
  }
  stats.shared_prompts = shared.size();
  if (stats.test_utterances > 0) {
    stats.overlap_percent = 100.0 *
                            static_cast<double>(stats.overlapping_utterances) /
                            static_cast<double>(stats.test_utterances);
  }
  return stats;
}

inline OverlapStats OverlapReport(const LosoSplit& split) {
  return ComputeOverlap(split.train, split.test);
}

}  // namespace promptsplit

#endif  // PROMPTSPLIT_CORPUS_HPP_
