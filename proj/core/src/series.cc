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

#include "punctkit/series.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "punctkit/error.h"

namespace punctkit {

std::string_view UnitName(Unit unit) {
  return unit == Unit::kWords ? "words" : "chars";
}

std::string_view ScopeName(Scope scope) {
  return scope == Scope::kAllPunct ? "all" : "terminal";
}

std::optional<Unit> ParseUnit(std::string_view name) {
  if (name == "words") return Unit::kWords;
  if (name == "chars" || name == "characters") return Unit::kCharacters;
  return std::nullopt;
}

std::optional<Scope> ParseScope(std::string_view name) {
  if (name == "all") return Scope::kAllPunct;
  if (name == "terminal") return Scope::kTerminalOnly;
  return std::nullopt;
}

DistanceSeries ExtractDistances(const TokenSequence& tokens, Unit unit,
                                Scope scope, bool newline_is_terminal) {
  if (tokens.tokens.empty()) {
    throw Error(ErrorCode::kEmptyInput, "token sequence is empty");
  }
  DistanceSeries series;
  series.unit = unit;
  series.scope = scope;
  series.source_id = tokens.source_id;

  bool any_boundary = false;
  int64_t gap = 0;
  // Kind of the most recent non-Newline token, if any.
  std::optional<TokenKind> last_content;
  for (const Token& t : tokens.tokens) {
    bool boundary = false;
    switch (t.kind) {
      case TokenKind::kWord:
        gap += unit == Unit::kWords ? 1 : t.char_len;
        break;
      case TokenKind::kPunct:
        boundary = scope == Scope::kAllPunct;
        break;
      case TokenKind::kTerminalPunct:
        boundary = true;
        break;
      case TokenKind::kNewline:
        boundary = newline_is_terminal &&
                   last_content != TokenKind::kTerminalPunct;
        break;
    }
    if (t.kind != TokenKind::kNewline) last_content = t.kind;
    if (!boundary) continue;
    any_boundary = true;
    if (gap > 0) {
      series.values.push_back(gap);
    } else {
      ++series.zero_gaps_skipped;
    }
    gap = 0;
  }
  if (!any_boundary) {
    throw Error(ErrorCode::kNoBoundaries,
                "no " + std::string(ScopeName(scope)) +
                    "-scope punctuation in '" + tokens.source_id + "'");
  }
  series.trailing_units = gap;
  return series;
}

DistributionTable EmpiricalDistribution(std::span<const int64_t> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kEmptyInput, "empty series");
  }
  std::map<int64_t, std::size_t> counts;
  for (int64_t v : values) ++counts[v];
  DistributionTable table;
  table.n = values.size();
  const double n = static_cast<double>(values.size());
  std::size_t cumulative = 0;
  double previous = 0.0;
  for (const auto& [value, count] : counts) {
    cumulative += count;
    const double cmf = static_cast<double>(cumulative) / n;
    table.support.push_back(value);
    table.cmf.push_back(cmf);
    table.pmf.push_back(cmf - previous);
    previous = cmf;
  }
  return table;
}

DistributionTable EmpiricalDistribution(const DistanceSeries& series) {
  return EmpiricalDistribution(series.values);
}

DistanceSeries TrimOutliers(const DistanceSeries& series,
                            std::size_t drop_largest) {
  if (drop_largest == 0) return series;
  if (drop_largest >= series.values.size()) {
    throw Error(ErrorCode::kPolicy,
                "cannot drop " + std::to_string(drop_largest) +
                    " values from a series of length " +
                    std::to_string(series.values.size()));
  }
  std::vector<std::size_t> order(series.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return series.values[a] > series.values[b];
  });
  std::vector<bool> drop(series.values.size(), false);
  for (std::size_t i = 0; i < drop_largest; ++i) drop[order[i]] = true;

  DistanceSeries out = series;
  out.values.clear();
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    if (drop[i]) {
      out.outliers_removed.push_back({i, series.values[i]});
    } else {
      out.values.push_back(series.values[i]);
    }
  }
  return out;
}

}  // namespace punctkit
