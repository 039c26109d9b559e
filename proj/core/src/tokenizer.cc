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

#include "punctkit/tokenizer.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>

#include "json.hpp"
#include "punctkit/error.h"
#include "punctkit/text_util.h"

namespace punctkit {

namespace {

const std::set<std::string>& ChineseExcluded() {
  static const std::set<std::string> kMarks = {
      "【", "】", "〔", "〕", "〖", "〗", "〈", "〉", "《", "》", "「",
      "」", "『", "』", "（", "）", "(",  ")",  "[",  "]",  "“",  "”",
      "‘",  "’",  "\"", "'",  "＂", "＇", "-",  "‐",  "‑",  "‒",  "–",
      "—",  "―",  "－",
  };
  return kMarks;
}

const std::set<std::string>& LatinExcluded() {
  static const std::set<std::string> kMarks = {
      "\"", "'", "“", "”", "‘", "’", "«", "»", "(", ")", "[", "]",
      "{",  "}", "-", "‐", "‑", "‒", "–", "—", "―",
  };
  return kMarks;
}

// Excluded marks kept inside a Latin word when flanked by alphanumerics, as in
// "don't" or "well-known".
bool IsIntraWordJoiner(std::u32string_view mark) {
  return mark == U"'" || mark == U"’" || mark == U"-" || mark == U"‐";
}

struct MatchedMark {
  std::size_t length = 0;
  MarkClass cls = MarkClass::kWord;
  std::u32string_view text;
};

// Longest-match lookup of policy marks keyed by their first scalar.
class MarkMatcher {
 public:
  explicit MarkMatcher(const PunctPolicy& policy) {
    Add(policy.terminal_set, MarkClass::kTerminalPunct);
    Add(policy.nonterminal_set, MarkClass::kPunct);
    Add(policy.excluded_set, MarkClass::kDropped);
    for (auto& [first, marks] : by_first_) {
      std::stable_sort(marks.begin(), marks.end(),
                       [](const auto& a, const auto& b) {
                         return a.first.size() > b.first.size();
                       });
    }
  }

  std::optional<MatchedMark> Match(std::u32string_view text,
                                   std::size_t pos) const {
    auto it = by_first_.find(text[pos]);
    if (it == by_first_.end()) return std::nullopt;
    for (const auto& [mark, cls] : it->second) {
      if (text.substr(pos, mark.size()) == mark) {
        return MatchedMark{mark.size(), cls, mark};
      }
    }
    return std::nullopt;
  }

 private:
  void Add(const std::set<std::string>& marks, MarkClass cls) {
    for (const auto& m : marks) {
      std::u32string decoded = DecodeUtf8(m);
      if (decoded.empty()) continue;
      by_first_[decoded.front()].emplace_back(std::move(decoded), cls);
    }
  }

  std::map<char32_t, std::vector<std::pair<std::u32string, MarkClass>>>
      by_first_;
};

Token MakeToken(std::u32string_view surface, TokenKind kind, int char_len) {
  return Token{EncodeUtf8(surface), kind, char_len};
}

TokenKind KindOf(MarkClass cls) {
  return cls == MarkClass::kTerminalPunct ? TokenKind::kTerminalPunct
                                          : TokenKind::kPunct;
}

int LatinCharLen(std::u32string_view word) {
  const auto letters = std::count_if(word.begin(), word.end(),
                                     [](char32_t c) { return IsAlphanumeric(c); });
  return static_cast<int>(letters > 0 ? letters : word.size());
}

}  // namespace

std::string_view TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord: return "word";
    case TokenKind::kPunct: return "punct";
    case TokenKind::kTerminalPunct: return "terminal";
    case TokenKind::kNewline: return "newline";
  }
  return "word";
}

PunctPolicy PunctPolicy::ChineseDefault() {
  PunctPolicy policy;
  policy.terminal_set = {"。", "！", "？", "…", "；"};
  policy.nonterminal_set = {"，", "、", "："};
  policy.excluded_set = ChineseExcluded();
  return policy;
}

PunctPolicy PunctPolicy::LatinDefault() {
  PunctPolicy policy;
  policy.terminal_set = {".", "!", "?", "…", "..."};
  policy.nonterminal_set = {",", ";", ":"};
  policy.excluded_set = LatinExcluded();
  return policy;
}

PunctPolicy PunctPolicy::DefaultFor(ScriptClass script) {
  return script == ScriptClass::kCjk ? ChineseDefault() : LatinDefault();
}

void PunctPolicy::Validate() const {
  auto check_pair = [](const std::set<std::string>& a,
                       const std::set<std::string>& b, const char* what) {
    for (const auto& m : a) {
      if (b.count(m)) {
        throw Error(ErrorCode::kPolicy,
                    std::string("punctuation mark '") + m + "' is in both " +
                        what);
      }
    }
  };
  check_pair(terminal_set, nonterminal_set, "terminal and nonterminal sets");
  check_pair(terminal_set, excluded_set, "terminal and excluded sets");
  check_pair(nonterminal_set, excluded_set, "nonterminal and excluded sets");
  for (const auto* set : {&terminal_set, &nonterminal_set, &excluded_set}) {
    for (const auto& m : *set) {
      if (m.empty()) throw Error(ErrorCode::kPolicy, "empty punctuation mark");
      for (char32_t c : DecodeUtf8(m)) {
        if (IsWhitespace(c)) {
          throw Error(ErrorCode::kPolicy,
                      "punctuation marks may not contain whitespace");
        }
      }
    }
  }
}

MarkClass ClassifyScalar(std::string_view mark, const PunctPolicy& policy) {
  const std::string key(mark);
  if (policy.terminal_set.count(key)) return MarkClass::kTerminalPunct;
  if (policy.nonterminal_set.count(key)) return MarkClass::kPunct;
  if (policy.excluded_set.count(key)) return MarkClass::kDropped;
  return MarkClass::kWord;
}

Lexicon Lexicon::FromEntries(
    const std::vector<std::pair<std::string, int64_t>>& entries) {
  Lexicon lex;
  for (const auto& [word, freq] : entries) {
    if (freq <= 0) {
      throw Error(ErrorCode::kParse,
                  "frequency for '" + word + "' must be positive");
    }
    std::u32string key = DecodeUtf8(word);
    if (key.empty()) throw Error(ErrorCode::kParse, "empty lexicon word");
    auto [it, inserted] = lex.entries_.emplace(std::move(key), freq);
    if (!inserted) it->second = std::max(it->second, freq);
  }
  if (lex.entries_.empty()) {
    throw Error(ErrorCode::kEmptyLexicon, "lexicon has no entries");
  }
  for (const auto& [word, freq] : lex.entries_) {
    lex.max_word_len_ = std::max(lex.max_word_len_, static_cast<int>(word.size()));
    lex.total_frequency_ += freq;
  }
  return lex;
}

int64_t Lexicon::Frequency(const std::u32string& word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? 0 : it->second;
}

bool Lexicon::Contains(const std::u32string& word) const {
  return entries_.count(word) > 0;
}

Lexicon ParseLexicon(std::istream& in, std::string_view source_name) {
  std::vector<std::pair<std::string, int64_t>> entries;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kParse, std::string(source_name) + ":" +
                                       std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      if (pos >= line.size()) break;
      std::size_t end = pos;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
      fields.push_back(line.substr(pos, end - pos));
      pos = end;
    }
    if (fields.empty()) continue;
    if (fields.size() < 2) fail("expected `word frequency`");
    if (fields.size() > 3) fail("too many fields");
    int64_t freq = 0;
    const auto& f = fields[1];
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), freq);
    if (ec != std::errc() || ptr != f.data() + f.size() || freq <= 0) {
      fail("frequency '" + f + "' is not a positive integer");
    }
    try {
      DecodeUtf8(fields[0]);
    } catch (const Error&) {
      fail("word is not valid UTF-8");
    }
    entries.emplace_back(fields[0], freq);
  }
  if (entries.empty()) {
    throw Error(ErrorCode::kEmptyLexicon,
                std::string(source_name) + ": lexicon has no entries");
  }
  return Lexicon::FromEntries(entries);
}

Lexicon LoadLexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lexicon " + path.string());
  return ParseLexicon(in, path.string());
}

CjkSegmenter::CjkSegmenter(const Lexicon& lexicon)
    : lexicon_(&lexicon),
      log_total_(std::log(static_cast<double>(lexicon.total_frequency()))),
      floor_score_(std::log(0.5) - log_total_) {}

double CjkSegmenter::WordScore(const std::u32string& word) const {
  const int64_t freq = lexicon_->Frequency(word);
  if (freq > 0) return std::log(static_cast<double>(freq)) - log_total_;
  if (word.size() == 1) return floor_score_;
  return -std::numeric_limits<double>::infinity();
}

std::vector<std::u32string> CjkSegmenter::SegmentRun(
    std::u32string_view run) const {
  const std::size_t n = run.size();
  if (n == 0) return {};
  // Suffix DP: best[i] describes the best segmentation of run[i..n).
  std::vector<double> score(n + 1, 0.0);
  std::vector<std::size_t> count(n + 1, 0);
  std::vector<std::size_t> step(n + 1, 0);
  const std::size_t max_len =
      std::max<std::size_t>(1, static_cast<std::size_t>(lexicon_->max_word_len()));
  for (std::size_t i = n; i-- > 0;) {
    bool have = false;
    for (std::size_t len = 1; len <= max_len && i + len <= n; ++len) {
      const double w = WordScore(std::u32string(run.substr(i, len)));
      if (std::isinf(w)) continue;
      const double cand = w + score[i + len];
      const std::size_t cand_count = 1 + count[i + len];
      if (!have) {
        have = true;
      } else {
        const double tol = 1e-9 * std::max(1.0, std::abs(score[i]));
        if (cand < score[i] - tol) continue;
        if (cand <= score[i] + tol && cand_count >= count[i]) continue;
      }
      score[i] = cand;
      count[i] = cand_count;
      step[i] = len;
    }
  }
  std::vector<std::u32string> words;
  words.reserve(count[0]);
  for (std::size_t i = 0; i < n; i += step[i]) {
    words.emplace_back(run.substr(i, step[i]));
  }
  return words;
}

TokenSequence SegmentCjk(const Document& doc, const Lexicon& lexicon,
                         const PunctPolicy& policy) {
  if (doc.script != ScriptClass::kCjk) {
    throw Error(ErrorCode::kScriptMismatch,
                "SegmentCjk requires a CJK document, got '" + doc.id + "'");
  }
  const MarkMatcher matcher(policy);
  const CjkSegmenter segmenter(lexicon);
  TokenSequence out{doc.id, doc.script, {}};
  auto& tokens = out.tokens;
  const std::u32string_view text = doc.text;

  std::size_t run_start = 0;
  std::size_t run_len = 0;
  auto flush_run = [&]() {
    const std::u32string_view run = text.substr(run_start, run_len);
    std::size_t i = 0;
    while (i < run.size()) {
      std::size_t j = i + 1;
      if (IsCjkScalar(run[i])) {
        while (j < run.size() && IsCjkScalar(run[j])) ++j;
        for (auto& w : segmenter.SegmentRun(run.substr(i, j - i))) {
          tokens.push_back(
              MakeToken(w, TokenKind::kWord, static_cast<int>(w.size())));
        }
      } else {
        if (IsAlphanumeric(run[i])) {
          while (j < run.size() && IsAlphanumeric(run[j]) &&
                 !IsCjkScalar(run[j])) {
            ++j;
          }
        }
        tokens.push_back(MakeToken(run.substr(i, j - i), TokenKind::kWord,
                                   static_cast<int>(j - i)));
      }
      i = j;
    }
    run_len = 0;
  };

  // End offset of the last emitted ellipsis token, for merging "……".
  std::size_t ellipsis_end = std::u32string::npos;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t c = text[pos];
    if (c == U'\n' || IsWhitespace(c)) {
      flush_run();
      if (c == U'\n') tokens.push_back(Token{"\n", TokenKind::kNewline, 1});
      ++pos;
      continue;
    }
    if (auto mark = matcher.Match(text, pos)) {
      flush_run();
      if (mark->cls != MarkClass::kDropped) {
        const bool is_ellipsis = mark->text == U"…";
        if (is_ellipsis && ellipsis_end == pos && !tokens.empty()) {
          tokens.back().surface += "…";
          tokens.back().char_len += 1;
        } else {
          tokens.push_back(MakeToken(mark->text, KindOf(mark->cls),
                                     static_cast<int>(mark->length)));
        }
        ellipsis_end = is_ellipsis ? pos + mark->length : std::u32string::npos;
      }
      pos += mark->length;
      continue;
    }
    if (run_len == 0) run_start = pos;
    ++run_len;
    ++pos;
  }
  flush_run();
  return out;
}

TokenSequence TokenizeLatin(const Document& doc, const PunctPolicy& policy) {
  if (doc.script != ScriptClass::kLatin) {
    throw Error(ErrorCode::kScriptMismatch,
                "TokenizeLatin requires a Latin document, got '" + doc.id + "'");
  }
  const MarkMatcher matcher(policy);
  TokenSequence out{doc.id, doc.script, {}};
  auto& tokens = out.tokens;
  const std::u32string_view text = doc.text;

  std::u32string word;
  auto flush_word = [&]() {
    if (word.empty()) return;
    tokens.push_back(MakeToken(word, TokenKind::kWord, LatinCharLen(word)));
    word.clear();
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t c = text[pos];
    if (IsWhitespace(c)) {
      flush_word();
      if (c == U'\n') tokens.push_back(Token{"\n", TokenKind::kNewline, 1});
      ++pos;
      continue;
    }
    if (auto mark = matcher.Match(text, pos)) {
      const std::size_t after = pos + mark->length;
      if (mark->cls == MarkClass::kDropped) {
        const bool joined = IsIntraWordJoiner(mark->text) && !word.empty() &&
                            IsAlphanumeric(word.back()) &&
                            after < text.size() && IsAlphanumeric(text[after]);
        if (joined) {
          word.append(mark->text);
        } else {
          flush_word();
        }
      } else {
        flush_word();
        tokens.push_back(MakeToken(mark->text, KindOf(mark->cls),
                                   static_cast<int>(mark->length)));
      }
      pos = after;
      continue;
    }
    word.push_back(c);
    ++pos;
  }
  flush_word();
  return out;
}

std::string TokensToJsonLines(const TokenSequence& tokens) {
  std::string out;
  for (const auto& t : tokens.tokens) {
    nlohmann::ordered_json j;
    j["surface"] = t.surface;
    j["kind"] = TokenKindName(t.kind);
    j["char_len"] = t.char_len;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace punctkit
