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

// Word error rate scoring and severity x category reports.

#ifndef PROMPTSPLIT_EVAL_HPP_
#define PROMPTSPLIT_EVAL_HPP_

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "promptsplit/corpus.hpp"
#include "promptsplit/error.hpp"
#include "promptsplit/text.hpp"

namespace promptsplit {

struct WerBreakdown {
  std::int64_t substitutions = 0;
  std::int64_t deletions = 0;
  std::int64_t insertions = 0;
  std::int64_t reference_length = 0;

  std::int64_t errors() const { return substitutions + deletions + insertions; }
  double wer() const {
    return reference_length == 0 ? 0.0
                                 : static_cast<double>(errors()) /
                                       static_cast<double>(reference_length);
  }

  WerBreakdown& operator+=(const WerBreakdown& o) {
    substitutions += o.substitutions;
    deletions += o.deletions;
    insertions += o.insertions;
    reference_length += o.reference_length;
    return *this;
  }

  friend bool operator==(const WerBreakdown&, const WerBreakdown&) = default;
};

// "12.5" for 0.125. Percent with one decimal, as in the report tables.
inline std::string FormatPercent(double fraction) {
  return FormatFixed(100.0 * fraction, 1);
}

// Unit-cost Levenshtein alignment. Cells hold (errors, insertions +
// deletions), so among minimum-cost alignments the one with the most
// substitutions wins; the backtrace then tries substitution, deletion,
// insertion in that order.
inline WerBreakdown Wer(std::span<const std::string> ref,
                        std::span<const std::string> hyp) {
  if (ref.empty()) throw DataError("WER needs a non-empty reference");
  using Cell = std::pair<std::int64_t, std::int64_t>;
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  std::vector<Cell> d((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> Cell& {
    return d[i * (m + 1) + j];
  };
  auto indel = [](Cell c) { return Cell{c.first + 1, c.second + 1}; };
  for (std::size_t i = 0; i <= n; ++i) {
    at(i, 0) = {static_cast<std::int64_t>(i), static_cast<std::int64_t>(i)};
  }
  for (std::size_t j = 0; j <= m; ++j) {
    at(0, j) = {static_cast<std::int64_t>(j), static_cast<std::int64_t>(j)};
  }
  auto diag = [&](std::size_t i, std::size_t j) {
    Cell c = at(i - 1, j - 1);
    if (ref[i - 1] != hyp[j - 1]) ++c.first;
    return c;
  };
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      at(i, j) = std::min({diag(i, j), indel(at(i - 1, j)),
                           indel(at(i, j - 1))});
    }
  }
  WerBreakdown out;
  out.reference_length = static_cast<std::int64_t>(n);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && at(i, j) == diag(i, j)) {
      if (ref[i - 1] != hyp[j - 1]) ++out.substitutions;
      --i, --j;
    } else if (i > 0 && at(i, j) == indel(at(i - 1, j))) {
      ++out.deletions;
      --i;
    } else {
      ++out.insertions;
      --j;
    }
  }
  return out;
}

struct HypothesisSet {
  std::map<std::string, std::string> text;
  std::map<std::string, std::size_t> line;
};

// Two-column (utterance_id, hypothesis) or four-column n-best rows, of which
// only rank 1 is kept. A leading "utterance_id" header row is skipped.
inline HypothesisSet LoadHypotheses(std::istream& in,
                                    const std::string& source) {
  HypothesisSet out;
  std::string line;
  std::size_t line_no = 0;
  while (ReadLine(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = SplitTabs(line);
    if (line_no == 1 && fields[0] == "utterance_id") continue;
    std::string text;
    if (fields.size() == 2) {
      text = fields[1];
    } else if (fields.size() == 4) {
      auto rank = ParseInt(fields[1]);
      if (!rank) throw DataError(source, line_no, "bad rank");
      if (!ParseDouble(fields[2])) {
        throw DataError(source, line_no, "bad acoustic score");
      }
      if (*rank != 1) continue;
      text = fields[3];
    } else {
      throw DataError(source, line_no, "expected 2 or 4 tab-separated fields");
    }
    if (fields[0].empty()) throw DataError(source, line_no, "empty utterance_id");
    auto [it, fresh] = out.line.emplace(fields[0], line_no);
    if (!fresh) {
      throw DataError(source, line_no,
                      "duplicate hypothesis for '" + fields[0] + "' (lines " +
                          std::to_string(it->second) + " and " +
                          std::to_string(line_no) + ")");
    }
    out.text.emplace(fields[0], std::move(text));
  }
  return out;
}

struct ScoredUtterance {
  std::string utterance_id;
  std::string speaker_id;
  Severity severity = Severity::kControl;
  PromptCategory category = PromptCategory::kIsolatedWord;
  WerBreakdown breakdown;
  bool missing_hypothesis = false;
};

struct ScoredSet {
  std::vector<ScoredUtterance> utterances;
  std::size_t missing = 0;  // references without a hypothesis
  std::size_t unknown = 0;  // hypotheses without a reference, ignored
  std::vector<std::string> warnings;
};

// Scores every reference utterance. Both sides go through NormalizePrompt.
// A missing hypothesis is scored as empty and reported in warnings.
inline ScoredSet ScoreHypotheses(std::span<const Utterance> references,
                                 const HypothesisSet& hypotheses) {
  ScoredSet out;
  std::map<std::string_view, bool> known;
  for (const Utterance& u : references) known[u.utterance_id] = true;
  for (const auto& [id, text] : hypotheses.text) {
    if (!known.count(id)) {
      ++out.unknown;
      out.warnings.push_back("hypothesis for unknown utterance '" + id +
                             "' ignored");
    }
  }
  for (const Utterance& u : references) {
    ScoredUtterance s{u.utterance_id, u.speaker_id, u.severity, u.category};
    auto ref = SplitWhitespace(u.normalized_prompt);
    auto it = hypotheses.text.find(u.utterance_id);
    std::vector<std::string> hyp;
    if (it == hypotheses.text.end()) {
      s.missing_hypothesis = true;
      ++out.missing;
      out.warnings.push_back("no hypothesis for '" + u.utterance_id +
                             "', scored as empty");
    } else {
      hyp = SplitWhitespace(NormalizePrompt(it->second));
    }
    s.breakdown = Wer(ref, hyp);
    out.utterances.push_back(std::move(s));
  }
  return out;
}

inline constexpr std::string_view kScoreColumns =
    "utterance_id\tspeaker_id\tseverity\tcategory\tref_words\tsubstitutions"
    "\tdeletions\tinsertions\twer";

inline void WriteScores(std::ostream& out, const ScoredSet& scored) {
  out << kScoreColumns << "\n";
  for (const auto& s : scored.utterances) {
    const auto& b = s.breakdown;
    out << s.utterance_id << "\t" << s.speaker_id << "\t"
        << SeverityLabel(s.severity) << "\t" << CategoryLabel(s.category)
        << "\t" << b.reference_length << "\t" << b.substitutions << "\t"
        << b.deletions << "\t" << b.insertions << "\t"
        << FormatPercent(b.wer()) << "\n";
  }
}

inline ScoredSet ReadScores(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 1;
  if (!ReadLine(in, line) || line != kScoreColumns) {
    throw DataError(source, line_no, "expected score header");
  }
  ScoredSet out;
  while (ReadLine(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = SplitTabs(line);
    if (f.size() != 9) throw DataError(source, line_no, "expected 9 fields");
    ScoredUtterance s{f[0], f[1]};
    auto severity = ParseSeverity(f[2]);
    if (!severity) throw DataError(source, line_no, "unknown severity " + f[2]);
    s.severity = *severity;
    if (f[3] == CategoryLabel(PromptCategory::kIsolatedWord)) {
      s.category = PromptCategory::kIsolatedWord;
    } else if (f[3] == CategoryLabel(PromptCategory::kSentence)) {
      s.category = PromptCategory::kSentence;
    } else {
      throw DataError(source, line_no, "unknown category " + f[3]);
    }
    std::int64_t* counts[] = {&s.breakdown.reference_length,
                              &s.breakdown.substitutions,
                              &s.breakdown.deletions, &s.breakdown.insertions};
    for (int k = 0; k < 4; ++k) {
      auto v = ParseInt(f[4 + k]);
      if (!v || *v < 0) throw DataError(source, line_no, "bad count");
      *counts[k] = *v;
    }
    if (s.breakdown.reference_length == 0 ||
        s.breakdown.substitutions + s.breakdown.deletions >
            s.breakdown.reference_length) {
      throw DataError(source, line_no, "inconsistent counts");
    }
    out.utterances.push_back(std::move(s));
  }
  return out;
}

enum class GroupKey { kSeverity, kCategory, kSpeaker };

inline GroupKey ParseGroupKey(std::string_view name) {
  if (name == "severity") return GroupKey::kSeverity;
  if (name == "category") return GroupKey::kCategory;
  if (name == "speaker") return GroupKey::kSpeaker;
  throw UsageError("unknown grouping key '" + std::string(name) +
                   "' (expected severity, category or speaker)");
}

inline std::string_view GroupKeyName(GroupKey key) {
  switch (key) {
    case GroupKey::kSeverity: return "severity";
    case GroupKey::kCategory: return "category";
    case GroupKey::kSpeaker: return "speaker";
  }
  return "";
}

struct ReportRow {
  std::vector<std::string> keys;
  std::size_t utterances = 0;
  WerBreakdown total;
};

struct Report {
  std::vector<GroupKey> group_by;
  std::vector<ReportRow> rows;
  ReportRow overall;
};

// Pooled WER per group: summed errors over summed reference words.
inline Report Aggregate(const ScoredSet& scored,
                        const std::vector<GroupKey>& group_by) {
  using SortKey = std::tuple<int, int, std::string>;
  std::map<SortKey, ReportRow> groups;
  Report report{group_by};
  report.overall.keys.assign(group_by.size(), "all");
  for (const auto& s : scored.utterances) {
    SortKey key{-1, -1, ""};
    std::vector<std::string> labels;
    for (GroupKey g : group_by) {
      switch (g) {
        case GroupKey::kSeverity:
          std::get<0>(key) = static_cast<int>(s.severity);
          labels.emplace_back(SeverityDisplayName(s.severity));
          break;
        case GroupKey::kCategory:
          std::get<1>(key) = static_cast<int>(s.category);
          labels.emplace_back(CategoryLabel(s.category));
          break;
        case GroupKey::kSpeaker:
          std::get<2>(key) = s.speaker_id;
          labels.push_back(s.speaker_id);
          break;
      }
    }
    ReportRow& row = groups[key];
    row.keys = std::move(labels);
    ++row.utterances;
    row.total += s.breakdown;
    ++report.overall.utterances;
    report.overall.total += s.breakdown;
  }
  for (auto& [key, row] : groups) report.rows.push_back(std::move(row));
  return report;
}

inline std::vector<std::vector<std::string>> ReportCells(const Report& report) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header;
  for (GroupKey g : report.group_by) header.emplace_back(GroupKeyName(g));
  for (const char* c : {"utterances", "ref_words", "sub", "del", "ins", "wer"}) {
    header.emplace_back(c);
  }
  cells.push_back(header);
  auto emit = [&](const ReportRow& row) {
    std::vector<std::string> line = row.keys;
    const WerBreakdown& b = row.total;
    for (std::int64_t v : {static_cast<std::int64_t>(row.utterances),
                           b.reference_length, b.substitutions, b.deletions,
                           b.insertions}) {
      line.push_back(std::to_string(v));
    }
    line.push_back(FormatPercent(b.wer()));
    cells.push_back(std::move(line));
  };
  for (const auto& row : report.rows) emit(row);
  emit(report.overall);
  return cells;
}

inline void WriteReportTsv(std::ostream& out, const Report& report) {
  for (const auto& line : ReportCells(report)) out << Join(line, "\t") << "\n";
}

// Columns padded to their widest cell; keys left, numbers right aligned.
inline void WriteAlignedTable(std::ostream& out,
                              const std::vector<std::vector<std::string>>& cells,
                              std::size_t left_columns) {
  std::vector<std::size_t> width;
  for (const auto& line : cells) {
    width.resize(std::max(width.size(), line.size()), 0);
    for (std::size_t c = 0; c < line.size(); ++c) {
      width[c] = std::max(width[c], line[c].size());
    }
  }
  for (const auto& line : cells) {
    std::string text;
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) text += "  ";
      std::string pad(width[c] - line[c].size(), ' ');
      text += c < left_columns ? line[c] + pad : pad + line[c];
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << "\n";
  }
}

inline void WriteReportText(std::ostream& out, const Report& report) {
  WriteAlignedTable(out, ReportCells(report), report.group_by.size());
}

// Severity rows by IW / Sent columns.
inline std::vector<std::vector<std::string>> SeverityByCategory(
    const ScoredSet& scored) {
  Report r = Aggregate(scored, {GroupKey::kSeverity, GroupKey::kCategory});
  Report by_severity = Aggregate(scored, {GroupKey::kSeverity});
  std::vector<std::vector<std::string>> cells{{"Severity", "IW", "Sent", "All"}};
  for (const auto& sev : by_severity.rows) {
    std::vector<std::string> line{sev.keys[0], "-", "-",
                                  FormatPercent(sev.total.wer())};
    for (const auto& row : r.rows) {
      if (row.keys[0] != sev.keys[0]) continue;
      line[row.keys[1] == CategoryLabel(PromptCategory::kIsolatedWord) ? 1 : 2] =
          FormatPercent(row.total.wer());
    }
    cells.push_back(std::move(line));
  }
  Report by_category = Aggregate(scored, {GroupKey::kCategory});
  std::vector<std::string> all{"All", "-", "-",
                               FormatPercent(by_category.overall.total.wer())};
  for (const auto& row : by_category.rows) {
    all[row.keys[0] == CategoryLabel(PromptCategory::kIsolatedWord) ? 1 : 2] =
        FormatPercent(row.total.wer());
  }
  cells.push_back(std::move(all));
  return cells;
}

}  // namespace promptsplit

#endif  // PROMPTSPLIT_EVAL_HPP_
