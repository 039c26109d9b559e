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

// Punctuation-distance and sentence-length series.

#ifndef PUNCTKIT_SERIES_H_
#define PUNCTKIT_SERIES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "punctkit/tokenizer.h"

namespace punctkit {

enum class Unit { kWords, kCharacters };
enum class Scope { kAllPunct, kTerminalOnly };

// "words" / "chars", "all" / "terminal".
std::string_view UnitName(Unit unit);
std::string_view ScopeName(Scope scope);
std::optional<Unit> ParseUnit(std::string_view name);
std::optional<Scope> ParseScope(std::string_view name);

struct Outlier {
  std::size_t index = 0;  // position in the series before trimming
  int64_t value = 0;

  friend bool operator==(const Outlier&, const Outlier&) = default;
};

struct DistanceSeries {
  std::vector<int64_t> values;  // all >= 1
  Unit unit = Unit::kWords;
  Scope scope = Scope::kAllPunct;
  std::string source_id;
  std::vector<Outlier> outliers_removed;
  // Bookkeeping: adjacent boundaries that produced no gap, and the units after
  // the last boundary (never recorded as a value).
  std::size_t zero_gaps_skipped = 0;
  int64_t trailing_units = 0;
};

// Boundaries: Punct and TerminalPunct tokens (kAllPunct) or TerminalPunct
// tokens only (kTerminalOnly). When `newline_is_terminal`, a Newline token
// whose nearest preceding non-Newline token is not TerminalPunct also acts as
// a sentence terminal, in both scopes. Text before the first boundary counts
// as a gap; text after the last boundary is dropped; zero gaps are skipped.
// Throws kNoBoundaries when no boundary exists in scope and kEmptyInput for an
// empty sequence.
DistanceSeries ExtractDistances(const TokenSequence& tokens, Unit unit,
                                Scope scope, bool newline_is_terminal = true);

struct DistributionTable {
  std::vector<int64_t> support;  // sorted, distinct
  std::vector<double> pmf;
  std::vector<double> cmf;
  std::size_t n = 0;
};

// cmf(k) = (#values <= k) / n; pmf is the successive difference of cmf, so the
// identity cmf[i] - cmf[i-1] == pmf[i] holds exactly and cmf ends at 1.
DistributionTable EmpiricalDistribution(std::span<const int64_t> values);
DistributionTable EmpiricalDistribution(const DistanceSeries& series);

// Removes the `drop_largest` largest values (first occurrence first on ties),
// preserving the order of the rest. 0 is the identity. Throws kPolicy when
// drop_largest >= series length.
DistanceSeries TrimOutliers(const DistanceSeries& series,
                            std::size_t drop_largest);

}  // namespace punctkit

#endif  // PUNCTKIT_SERIES_H_
