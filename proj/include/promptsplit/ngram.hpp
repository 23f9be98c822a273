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

// Interpolated modified Kneser-Ney n-gram models with ARPA I/O, perplexity
// and n-best rescoring.
//
// Counting follows the usual toolkit conventions: each line is padded with
// a single <s> and terminated by </s>. Lower orders use continuation counts
// (distinct left neighbours) except for n-grams starting with <s>, which
// have no left context and keep their raw counts. The unigram level is
// interpolated with a uniform distribution over the vocabulary, which is
// where <unk> gets its probability.

#ifndef PROMPTSPLIT_NGRAM_HPP_
#define PROMPTSPLIT_NGRAM_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
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

inline constexpr std::string_view kSentenceStart = "<s>";
inline constexpr std::string_view kSentenceEnd = "</s>";
inline constexpr std::string_view kUnknownWord = "<unk>";

// Score ARPA files use for <s>, which is never predicted.
inline constexpr double kStartLogProb = -99.0;

using Ngram = std::vector<std::string>;
using TokenLines = std::vector<std::vector<std::string>>;

// One whitespace-tokenized line per sentence; blank lines are skipped.
inline TokenLines ReadTokenLines(std::istream& in) {
  TokenLines lines;
  std::string line;
  while (ReadLine(in, line)) {
    auto tokens = SplitWhitespace(line);
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  return lines;
}

struct NgramCounts {
  int order = 3;
  std::map<Ngram, std::int64_t> counts;
  std::set<std::string> vocabulary;
  // count_of_counts[k - 1][c] = number of distinct k-grams seen c times.
  std::vector<std::map<std::int64_t, std::int64_t>> count_of_counts;
};

namespace internal {

inline void FillCountOfCounts(NgramCounts& counts) {
  counts.count_of_counts.assign(counts.order, {});
  for (const auto& [gram, c] : counts.counts) {
    ++counts.count_of_counts[gram.size() - 1][c];
  }
}

}  // namespace internal

inline NgramCounts CountNgrams(const TokenLines& corpus, int order) {
  if (order < 1) throw UsageError("n-gram order must be >= 1");
  NgramCounts out;
  out.order = order;
  Ngram padded;
  for (const auto& line : corpus) {
    if (line.empty()) continue;
    padded.assign(1, std::string(kSentenceStart));
    padded.insert(padded.end(), line.begin(), line.end());
    padded.emplace_back(kSentenceEnd);
    for (const auto& w : line) out.vocabulary.insert(w);
    for (std::size_t i = 0; i < padded.size(); ++i) {
      for (int k = 1; k <= order && i + k <= padded.size(); ++k) {
        ++out.counts[Ngram(padded.begin() + i, padded.begin() + i + k)];
      }
    }
  }
  if (out.counts.empty()) throw DataError("empty corpus: no tokens to count");
  internal::FillCountOfCounts(out);
  return out;
}

// Replaces counts below the top order with continuation counts, except for
// n-grams that start with <s>.
inline NgramCounts AdjustCounts(const NgramCounts& raw) {
  NgramCounts out;
  out.order = raw.order;
  out.vocabulary = raw.vocabulary;
  for (const auto& [gram, c] : raw.counts) {
    int k = static_cast<int>(gram.size());
    if (k == raw.order || gram[0] == kSentenceStart) out.counts[gram] = c;
    if (k >= 2) {
      Ngram suffix(gram.begin() + 1, gram.end());
      if (suffix[0] != kSentenceStart) ++out.counts[suffix];
    }
  }
  internal::FillCountOfCounts(out);
  return out;
}

struct Discounts {
  std::array<double, 3> d = {0.5, 0.5, 0.5};  // D1, D2, D3+

  double For(std::int64_t count) const {
    if (count <= 0) return 0.0;
    return d[std::min<std::int64_t>(count, 3) - 1];
  }
};

// Chen-Goodman estimates. Degenerate statistics (any of n1, n2, n3 zero)
// fall back to 0.5 for all three.
inline Discounts EstimateDiscounts(
    const std::map<std::int64_t, std::int64_t>& count_of_counts) {
  auto n = [&](std::int64_t c) -> double {
    auto it = count_of_counts.find(c);
    return it == count_of_counts.end() ? 0.0 : static_cast<double>(it->second);
  };
  Discounts out;
  if (n(1) == 0 || n(2) == 0 || n(3) == 0) return out;
  double y = n(1) / (n(1) + 2 * n(2));
  for (int k = 1; k <= 3; ++k) {
    double dk = k - (k + 1) * y * n(k + 1) / n(k);
    out.d[k - 1] = std::clamp(dk, 0.0, static_cast<double>(k));
  }
  return out;
}

// Per-order discounts from the adjusted counts. <s> is not a unigram event.
inline std::vector<Discounts> EstimateDiscounts(const NgramCounts& counts) {
  if (counts.counts.empty()) throw DataError("empty n-gram counts");
  NgramCounts adjusted = AdjustCounts(counts);
  std::vector<Discounts> out;
  for (int k = 1; k <= counts.order; ++k) {
    auto coc = adjusted.count_of_counts[k - 1];
    if (k == 1) {
      auto it = adjusted.counts.find(Ngram{std::string(kSentenceStart)});
      if (it != adjusted.counts.end() && --coc[it->second] == 0) {
        coc.erase(it->second);
      }
    }
    out.push_back(EstimateDiscounts(coc));
  }
  return out;
}

// Backoff-form model, the same shape an ARPA file stores. Immutable once
// built; all queries are const.
class KneserNeyModel {
 public:
  struct Entry {
    double log10_prob = 0.0;
    double log10_backoff = 0.0;
    bool has_backoff = false;
  };

  explicit KneserNeyModel(int order) : order_(order), grams_(order) {
    if (order < 1) throw UsageError("n-gram order must be >= 1");
  }

  int order() const { return order_; }

  const std::vector<Discounts>& discounts() const { return discounts_; }
  void set_discounts(std::vector<Discounts> d) { discounts_ = std::move(d); }

  void Set(const Ngram& gram, Entry entry) {
    if (gram.empty() || static_cast<int>(gram.size()) > order_) {
      throw UsageError("n-gram length outside model order");
    }
    grams_[gram.size() - 1][Key(gram)] = entry;
  }

  void SetBackoff(const Ngram& gram, double log10_backoff) {
    auto& e = grams_.at(gram.size() - 1).at(Key(gram));
    e.log10_backoff = log10_backoff;
    e.has_backoff = true;
  }

  const Entry* Find(std::span<const std::string> gram) const {
    if (gram.empty() || static_cast<int>(gram.size()) > order_) return nullptr;
    const auto& level = grams_[gram.size() - 1];
    auto it = level.find(Key(gram));
    return it == level.end() ? nullptr : &it->second;
  }

  std::size_t Size(int k) const { return grams_.at(k - 1).size(); }

  // All k-grams, sorted by token sequence.
  std::vector<std::pair<Ngram, Entry>> Sorted(int k) const {
    std::vector<std::pair<Ngram, Entry>> out;
    for (const auto& [key, e] : grams_.at(k - 1)) {
      out.emplace_back(SplitKey(key), e);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  // True for any token the model can predict directly (not <s>, not OOV).
  bool InVocabulary(std::string_view word) const {
    return word != kSentenceStart &&
           grams_[0].count(std::string(word)) != 0;
  }

  // Predictable tokens, including </s> and <unk>, sorted.
  std::vector<std::string> Vocabulary() const {
    std::vector<std::string> out;
    for (const auto& [key, e] : grams_[0]) {
      if (key != kSentenceStart) out.push_back(key);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // log10 p(word | context). Only the last order-1 context tokens matter;
  // OOV tokens anywhere are read as <unk>.
  double LogProb(std::span<const std::string> context,
                 const std::string& word) const {
    std::size_t keep = std::min<std::size_t>(context.size(), order_ - 1);
    Ngram gram;
    gram.reserve(keep + 1);
    for (std::size_t i = context.size() - keep; i < context.size(); ++i) {
      gram.push_back(Map(context[i]));
    }
    gram.push_back(Map(word));
    double backoff = 0.0;
    for (std::size_t start = 0; start < gram.size(); ++start) {
      std::span<const std::string> g(gram.begin() + start, gram.end());
      if (const Entry* e = Find(g)) return backoff + e->log10_prob;
      if (const Entry* c = Find(g.first(g.size() - 1))) {
        backoff += c->log10_backoff;
      }
    }
    // Only reachable if the model lacks <unk>.
    throw DataError("model has no <unk> entry");
  }

  // log10 probability of a whole line, </s> included.
  double ScoreSentence(std::span<const std::string> words) const {
    Ngram history{std::string(kSentenceStart)};
    double total = 0.0;
    for (const auto& w : words) {
      total += LogProb(history, w);
      history.push_back(w);
    }
    return total + LogProb(history, std::string(kSentenceEnd));
  }

 private:
  static std::string Key(std::span<const std::string> gram) {
    std::string key;
    for (std::size_t i = 0; i < gram.size(); ++i) {
      if (i > 0) key.push_back(' ');
      key.append(gram[i]);
    }
    return key;
  }

  static Ngram SplitKey(const std::string& key) {
    Ngram out;
    std::size_t start = 0;
    while (true) {
      std::size_t space = key.find(' ', start);
      out.push_back(key.substr(start, space - start));
      if (space == std::string::npos) return out;
      start = space + 1;
    }
  }

  std::string Map(const std::string& token) const {
    if (token == kSentenceStart || grams_[0].count(token)) return token;
    return std::string(kUnknownWord);
  }

  int order_;
  std::vector<std::unordered_map<std::string, Entry>> grams_;
  std::vector<Discounts> discounts_;
};

inline KneserNeyModel TrainKneserNey(const NgramCounts& counts) {
  if (counts.order < 2) throw UsageError("Kneser-Ney needs order >= 2");
  if (counts.counts.empty()) throw DataError("empty n-gram counts");
  const int order = counts.order;
  NgramCounts adjusted = AdjustCounts(counts);
  KneserNeyModel model(order);
  std::vector<Discounts> discounts = EstimateDiscounts(counts);
  model.set_discounts(discounts);

  const std::string start(kSentenceStart);
  const std::string unk(kUnknownWord);

  // Unigrams: discounted continuation counts plus a uniform share of the
  // removed mass over every predictable token.
  std::map<std::string, std::int64_t> unigram;
  for (const auto& [gram, a] : adjusted.counts) {
    if (gram.size() == 1 && gram[0] != start) unigram[gram[0]] = a;
  }
  unigram.emplace(unk, 0);
  double total = 0.0;
  double mass = 0.0;
  for (const auto& [w, a] : unigram) {
    total += a;
    mass += discounts[0].For(a);
  }
  const double uniform = mass / total / static_cast<double>(unigram.size());
  for (const auto& [w, a] : unigram) {
    double p = (a - discounts[0].For(a)) / total + uniform;
    model.Set({w}, {.log10_prob = std::log10(p)});
  }
  model.Set({start}, {.log10_prob = kStartLogProb});

  struct ContextStats {
    double total = 0.0;
    double mass = 0.0;
  };
  for (int k = 2; k <= order; ++k) {
    const Discounts& dk = discounts[k - 1];
    std::map<Ngram, ContextStats> contexts;
    for (const auto& [gram, a] : adjusted.counts) {
      if (static_cast<int>(gram.size()) != k) continue;
      auto& s = contexts[Ngram(gram.begin(), gram.end() - 1)];
      s.total += a;
      s.mass += dk.For(a);
    }
    // Lower orders are final here, so LogProb on a shortened context gives
    // the interpolated lower-order estimate.
    for (const auto& [gram, a] : adjusted.counts) {
      if (static_cast<int>(gram.size()) != k) continue;
      const auto& s = contexts[Ngram(gram.begin(), gram.end() - 1)];
      std::span<const std::string> lower_context(gram.begin() + 1,
                                                 gram.end() - 1);
      double lower = std::pow(10.0, model.LogProb(lower_context, gram.back()));
      double p = (a - dk.For(a)) / s.total + s.mass / s.total * lower;
      model.Set(gram, {.log10_prob = std::log10(p)});
    }
    for (const auto& [context, s] : contexts) {
      model.SetBackoff(context, std::log10(s.mass / s.total));
    }
  }
  return model;
}

// ARPA serialization. Scores are written in shortest round-trip form so
// reading a written model gives back the exact same doubles.
inline void WriteArpa(const KneserNeyModel& model, std::ostream& out) {
  out << "\n\\data\\\n";
  for (int k = 1; k <= model.order(); ++k) {
    out << "ngram " << k << "=" << model.Size(k) << "\n";
  }
  for (int k = 1; k <= model.order(); ++k) {
    out << "\n\\" << k << "-grams:\n";
    for (const auto& [gram, e] : model.Sorted(k)) {
      out << FormatShortest(e.log10_prob) << "\t" << Join(gram, " ");
      if (e.has_backoff) out << "\t" << FormatShortest(e.log10_backoff);
      out << "\n";
    }
  }
  out << "\n\\end\\\n";
}

inline KneserNeyModel ReadArpa(std::istream& in,
                               const std::string& source = "<arpa>") {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> bool {
    while (ReadLine(in, line)) {
      ++line_no;
      if (!SplitWhitespace(line).empty()) return true;
    }
    return false;
  };

  if (!next() || SplitWhitespace(line)[0] != "\\data\\") {
    throw DataError(source, line_no, "expected \\data\\ header");
  }
  std::vector<std::int64_t> declared;
  while (next() && line.rfind("ngram ", 0) == 0) {
    std::string_view spec = std::string_view(line).substr(6);
    std::size_t eq = spec.find('=');
    auto k = ParseInt(spec.substr(0, eq));
    auto n = eq == std::string_view::npos ? std::nullopt
                                          : ParseInt(spec.substr(eq + 1));
    if (!k || !n || *k != static_cast<long long>(declared.size()) + 1 ||
        *n < 0) {
      throw DataError(source, line_no, "malformed count line: " + line);
    }
    declared.push_back(*n);
  }
  if (declared.empty()) {
    throw DataError(source, line_no, "no n-gram counts in \\data\\ section");
  }

  KneserNeyModel model(static_cast<int>(declared.size()));
  for (int k = 1; k <= model.order(); ++k) {
    std::string header = "\\" + std::to_string(k) + "-grams:";
    if (SplitWhitespace(line)[0] != header) {
      throw DataError(source, line_no,
                      "expected " + header + ", got: " + line);
    }
    std::int64_t found = 0;
    while (next() && line[0] != '\\') {
      auto fields = SplitWhitespace(line);
      if (fields.size() != static_cast<std::size_t>(k) + 1 &&
          fields.size() != static_cast<std::size_t>(k) + 2) {
        throw DataError(source, line_no,
                        "order " + std::to_string(k) +
                            ": wrong field count in n-gram line");
      }
      auto prob = ParseDouble(fields[0]);
      if (!prob) throw DataError(source, line_no, "bad log probability");
      KneserNeyModel::Entry e{.log10_prob = *prob};
      if (fields.size() == static_cast<std::size_t>(k) + 2) {
        auto bo = ParseDouble(fields.back());
        if (!bo) throw DataError(source, line_no, "bad backoff weight");
        e.log10_backoff = *bo;
        e.has_backoff = true;
      }
      model.Set(Ngram(fields.begin() + 1, fields.begin() + 1 + k), e);
      ++found;
    }
    if (found != declared[k - 1] ||
        static_cast<std::int64_t>(model.Size(k)) != found) {
      throw DataError(source, line_no,
                      "order " + std::to_string(k) + ": declared " +
                          std::to_string(declared[k - 1]) +
                          " n-grams, found " + std::to_string(found));
    }
  }
  if (SplitWhitespace(line).empty() || SplitWhitespace(line)[0] != "\\end\\") {
    throw DataError(source, line_no, "expected \\end\\");
  }
  if (!model.InVocabulary(kUnknownWord)) {
    // Models without <unk> cannot score OOV tokens; give them a floor.
    model.Set({std::string(kUnknownWord)}, {.log10_prob = kStartLogProb});
  }
  return model;
}

enum class OovPolicy { kScoreAsUnk, kExclude };

struct EvalStats {
  double perplexity = 0.0;
  double log10_total = 0.0;
  std::int64_t sentences = 0;
  std::int64_t token_count = 0;    // words, without </s>
  std::int64_t scored_tokens = 0;  // what the perplexity averages over
  std::int64_t oov_tokens = 0;
  double oov_rate = 0.0;
};

inline EvalStats Perplexity(const KneserNeyModel& model, const TokenLines& test,
                            OovPolicy policy = OovPolicy::kScoreAsUnk) {
  EvalStats stats;
  const std::string end(kSentenceEnd);
  for (const auto& words : test) {
    if (words.empty()) continue;
    ++stats.sentences;
    Ngram history{std::string(kSentenceStart)};
    for (const auto& w : words) {
      ++stats.token_count;
      bool oov = !model.InVocabulary(w);
      if (oov) ++stats.oov_tokens;
      if (!oov || policy == OovPolicy::kScoreAsUnk) {
        stats.log10_total += model.LogProb(history, w);
        ++stats.scored_tokens;
      }
      history.push_back(w);
    }
    stats.log10_total += model.LogProb(history, end);
    ++stats.scored_tokens;
  }
  if (stats.sentences == 0) throw DataError("empty test text");
  stats.perplexity = std::pow(
      10.0, -stats.log10_total / static_cast<double>(stats.scored_tokens));
  stats.oov_rate = static_cast<double>(stats.oov_tokens) /
                   static_cast<double>(stats.token_count);
  return stats;
}

}  // namespace promptsplit

#endif  // PROMPTSPLIT_NGRAM_HPP_
