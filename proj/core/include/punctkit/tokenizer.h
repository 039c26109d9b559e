// Copyright 2026 The punctkit Authors.
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

#ifndef PUNCTKIT_TOKENIZER_H_
#define PUNCTKIT_TOKENIZER_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "punctkit/corpus.h"

namespace punctkit {

enum class TokenKind { kWord, kPunct, kTerminalPunct, kNewline };

// "word" / "punct" / "terminal" / "newline".
std::string_view TokenKindName(TokenKind kind);

struct Token {
  std::string surface;  // UTF-8
  TokenKind kind = TokenKind::kWord;
  int char_len = 1;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenSequence {
  std::string source_id;
  ScriptClass script = ScriptClass::kLatin;
  std::vector<Token> tokens;
};

// Which punctuation marks bound words and sentences. Marks are UTF-8 strings,
// usually one scalar; multi-scalar marks such as "..." are matched longest
// first.
struct PunctPolicy {
  std::set<std::string> terminal_set;
  std::set<std::string> nonterminal_set;
  std::set<std::string> excluded_set;
  bool newline_is_terminal = true;

  // 。！？…； terminal, ，、： nonterminal; brackets, book-title marks,
  // corner/angle quotes, Western quotes and dashes excluded.
  static PunctPolicy ChineseDefault();
  // . ! ? … ... terminal, , ; : nonterminal; quotes, brackets and dashes
  // excluded.
  static PunctPolicy LatinDefault();
  static PunctPolicy DefaultFor(ScriptClass script);

  // Throws kPolicy unless the three sets are pairwise disjoint and non-empty
  // strings.
  void Validate() const;

  friend bool operator==(const PunctPolicy&, const PunctPolicy&) = default;
};

enum class MarkClass { kWord, kPunct, kTerminalPunct, kDropped };

MarkClass ClassifyScalar(std::string_view mark, const PunctPolicy& policy);

// Word -> unigram frequency dictionary, in the whitespace separated
// `word freq [tag]` format used by common Chinese segmenters.
class Lexicon {
 public:
  // Duplicate words keep the larger frequency. Throws kEmptyLexicon when
  // `entries` is empty and kParse for non-positive frequencies.
  static Lexicon FromEntries(
      const std::vector<std::pair<std::string, int64_t>>& entries);

  // 0 when absent.
  int64_t Frequency(const std::u32string& word) const;
  bool Contains(const std::u32string& word) const;

  std::size_t size() const { return entries_.size(); }
  int max_word_len() const { return max_word_len_; }
  int64_t total_frequency() const { return total_frequency_; }

 private:
  std::unordered_map<std::u32string, int64_t> entries_;
  int max_word_len_ = 0;
  int64_t total_frequency_ = 0;
};

// Throws kParse (with 1-based line number) or kEmptyLexicon. Blank lines are
// skipped.
Lexicon ParseLexicon(std::istream& in, std::string_view source_name);
Lexicon LoadLexicon(const std::filesystem::path& path);

// Dictionary segmentation of a single run of CJK scalars: maximizes the sum of
// log unigram probabilities over paths of lexicon words, with unknown scalars
// admitted as one-character words at log(0.5 / total mass). Ties prefer fewer
// tokens, then the earliest first boundary.
class CjkSegmenter {
 public:
  explicit CjkSegmenter(const Lexicon& lexicon);

  std::vector<std::u32string> SegmentRun(std::u32string_view run) const;

  // Log-probability of `word` as a single token; -inf when the word is
  // neither in the lexicon nor a single scalar.
  double WordScore(const std::u32string& word) const;
  double floor_score() const { return floor_score_; }

 private:
  const Lexicon* lexicon_;
  double log_total_;
  double floor_score_;
};

// Throws kScriptMismatch unless doc.script is kCjk.
TokenSequence SegmentCjk(const Document& doc, const Lexicon& lexicon,
                         const PunctPolicy& policy);

// Throws kScriptMismatch unless doc.script is kLatin.
TokenSequence TokenizeLatin(const Document& doc, const PunctPolicy& policy);

// One JSON object per line: {"surface":...,"kind":...,"char_len":...}.
std::string TokensToJsonLines(const TokenSequence& tokens);

}  // namespace punctkit

#endif  // PUNCTKIT_TOKENIZER_H_
