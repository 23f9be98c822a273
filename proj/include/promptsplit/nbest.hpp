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

// N-best lists: TSV loading and second-pass LM rescoring.
//
// File layout, one hypothesis per row, optional header:
//   utterance_id <TAB> rank <TAB> acoustic_score <TAB> hypothesis

#ifndef PROMPTSPLIT_NBEST_HPP_
#define PROMPTSPLIT_NBEST_HPP_

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "promptsplit/error.hpp"
#include "promptsplit/ngram.hpp"
#include "promptsplit/text.hpp"

namespace promptsplit {

struct NBestEntry {
  std::string utterance_id;
  std::int64_t rank = 1;
  double acoustic_score = 0.0;  // log domain, higher is better
  std::string hypothesis;
  std::size_t line = 0;
};

using NBestList = std::vector<NBestEntry>;

// Lists come back in order of first appearance, rows in file order.
inline std::vector<NBestList> ReadNBest(std::istream& in,
                                        const std::string& source) {
  std::vector<NBestList> lists;
  std::unordered_map<std::string, std::size_t> index;
  std::map<std::pair<std::string, std::int64_t>, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (ReadLine(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = SplitTabs(line);
    if (line_no == 1 && fields[0] == "utterance_id") continue;
    if (fields.size() != 4) {
      throw DataError(source, line_no, "expected 4 tab-separated fields");
    }
    auto rank = ParseInt(fields[1]);
    auto score = ParseDouble(fields[2]);
    if (!rank || *rank < 1) throw DataError(source, line_no, "bad rank");
    if (!score) throw DataError(source, line_no, "bad acoustic score");
    auto [it, fresh] = seen.emplace(std::pair(fields[0], *rank), line_no);
    if (!fresh) {
      throw DataError(source, line_no,
                      "duplicate rank " + fields[1] + " for " + fields[0] +
                          " (first on line " + std::to_string(it->second) +
                          ")");
    }
    auto [pos, added] = index.emplace(fields[0], lists.size());
    if (added) lists.emplace_back();
    lists[pos->second].push_back(
        {fields[0], *rank, *score, fields[3], line_no});
  }
  return lists;
}

struct RankedHypothesis {
  NBestEntry entry;
  double lm_log10 = 0.0;
  double total = 0.0;
};

// Orders by acoustic + lm_weight * log10 LM score, best first. Ties keep the
// input order. Hypotheses are scored as whitespace tokens; normalize first.
inline std::vector<RankedHypothesis> RescoreNBest(const KneserNeyModel& model,
                                                  const NBestList& nbest,
                                                  double lm_weight) {
  if (nbest.empty()) throw DataError("empty n-best list");
  if (!(lm_weight >= 0.0)) throw UsageError("lm weight must be >= 0");
  std::vector<RankedHypothesis> out;
  out.reserve(nbest.size());
  for (const auto& e : nbest) {
    RankedHypothesis r{e};
    r.lm_log10 = model.ScoreSentence(SplitWhitespace(e.hypothesis));
    r.total = e.acoustic_score + lm_weight * r.lm_log10;
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.total > b.total; });
  return out;
}

}  // namespace promptsplit

#endif  // PROMPTSPLIT_NBEST_HPP_
