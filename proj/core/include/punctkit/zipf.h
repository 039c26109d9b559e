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

// Rank-frequency tables and power-law fits P(R) ~ R^-gamma.

#ifndef PUNCTKIT_ZIPF_H_
#define PUNCTKIT_ZIPF_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "punctkit/tokenizer.h"

namespace punctkit {

struct RankEntry {
  int64_t rank = 0;
  std::string token;
  int64_t count = 0;
  double prob = 0.0;
};

struct RankTable {
  std::vector<RankEntry> entries;  // ranks 1..V, counts nonincreasing
  bool include_punct = false;
  int64_t total_tokens = 0;

  // Largest rank whose count is >= 2; 0 if none.
  int64_t LastNonHapaxRank() const;
};

// `counts` lists each type once, in first-occurrence order; equal counts keep
// that order. Throws kEmptyInput when there is nothing to count.
RankTable RankTableFromCounts(
    const std::vector<std::pair<std::string, int64_t>>& counts,
    bool include_punct);

// Counts Word tokens (case-folded when `case_fold`) and, with
// `include_punct`, Punct/TerminalPunct tokens keyed by surface. Newlines are
// never counted.
RankTable RankFrequency(const TokenSequence& tokens, bool include_punct,
                        bool case_fold);

struct RankRange {
  int64_t lo = 1;
  int64_t hi = 1;

  friend bool operator==(const RankRange&, const RankRange&) = default;
};

struct PowerLawFit {
  double gamma = 0.0;      // negated log-log slope
  double intercept = 0.0;  // natural-log intercept
  double r_squared = 0.0;
  RankRange fit_range;
};

inline constexpr int64_t kMinFitRanks = 10;

// OLS of ln P(R) on ln R over `range`. nullopt selects [1, last rank with
// count >= 2]. Throws kRangeTooSmall for fewer than kMinFitRanks ranks or a
// range outside the table.
PowerLawFit FitPowerLaw(const RankTable& table,
                        std::optional<RankRange> range = std::nullopt);

struct CrossoverFit {
  int64_t breakpoint = 0;  // last rank of the low-rank regime
  PowerLawFit fit_low;
  PowerLawFit fit_high;
  double single_rss = 0.0;  // on the log-rank grid
  double two_rss = 0.0;
  // (single_rss - two_rss) / single_rss; 0 when the single fit is already
  // exact to rounding.
  double improvement = 0.0;
};

inline constexpr int kCrossoverGridPerDecade = 20;

// Ranks 1..hi thinned to kCrossoverGridPerDecade log-spaced points per decade.
std::vector<int64_t> LogRankGrid(int64_t hi);

// Exhaustive two-segment scan over LogRankGrid(LastNonHapaxRank()); each
// segment keeps at least `min_segment` grid points. Throws kRangeTooSmall.
CrossoverFit DetectCrossover(const RankTable& table, int min_segment = 10);

}  // namespace punctkit

#endif  // PUNCTKIT_ZIPF_H_
