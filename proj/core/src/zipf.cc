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

#include "punctkit/zipf.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "punctkit/error.h"
#include "punctkit/regression.h"
#include "punctkit/text_util.h"

namespace punctkit {

namespace {

double SegmentRss(const std::vector<double>& x, const std::vector<double>& y,
                  std::size_t begin, std::size_t end) {
  const auto fit = FitLine(std::span(x).subspan(begin, end - begin),
                           std::span(y).subspan(begin, end - begin));
  return fit.rss;
}

}  // namespace

int64_t RankTable::LastNonHapaxRank() const {
  int64_t last = 0;
  for (const auto& e : entries) {
    if (e.count >= 2) last = e.rank;
  }
  return last;
}

RankTable RankTableFromCounts(
    const std::vector<std::pair<std::string, int64_t>>& counts,
    bool include_punct) {
  RankTable table;
  table.include_punct = include_punct;
  for (const auto& [token, count] : counts) {
    if (count <= 0) continue;
    table.entries.push_back({0, token, count, 0.0});
    table.total_tokens += count;
  }
  if (table.entries.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no countable tokens");
  }
  std::stable_sort(table.entries.begin(), table.entries.end(),
                   [](const RankEntry& a, const RankEntry& b) {
                     return a.count > b.count;
                   });
  const double total = static_cast<double>(table.total_tokens);
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    table.entries[i].rank = static_cast<int64_t>(i) + 1;
    table.entries[i].prob = static_cast<double>(table.entries[i].count) / total;
  }
  return table;
}

RankTable RankFrequency(const TokenSequence& tokens, bool include_punct,
                        bool case_fold) {
  std::vector<std::pair<std::string, int64_t>> counts;
  std::unordered_map<std::string, std::size_t> index;
  for (const Token& t : tokens.tokens) {
    std::string key;
    if (t.kind == TokenKind::kWord) {
      key = case_fold ? FoldCase(t.surface) : t.surface;
    } else if (include_punct && (t.kind == TokenKind::kPunct ||
                                 t.kind == TokenKind::kTerminalPunct)) {
      key = t.surface;
    } else {
      continue;
    }
    auto [it, inserted] = index.emplace(key, counts.size());
    if (inserted) counts.emplace_back(std::move(key), 0);
    ++counts[it->second].second;
  }
  return RankTableFromCounts(counts, include_punct);
}

PowerLawFit FitPowerLaw(const RankTable& table,
                        std::optional<RankRange> range) {
  const int64_t vocab = static_cast<int64_t>(table.entries.size());
  const RankRange r = range.value_or(RankRange{1, table.LastNonHapaxRank()});
  if (r.lo < 1 || r.hi > vocab || r.hi - r.lo + 1 < kMinFitRanks) {
    throw Error(ErrorCode::kRangeTooSmall,
                "rank range [" + std::to_string(r.lo) + ", " +
                    std::to_string(r.hi) + "] needs at least " +
                    std::to_string(kMinFitRanks) + " ranks within 1.." +
                    std::to_string(vocab));
  }
  std::vector<double> x;
  std::vector<double> y;
  for (int64_t rank = r.lo; rank <= r.hi; ++rank) {
    x.push_back(std::log(static_cast<double>(rank)));
    y.push_back(std::log(table.entries[static_cast<std::size_t>(rank - 1)].prob));
  }
  const LinearFit fit = FitLine(x, y);
  return PowerLawFit{-fit.slope, fit.intercept, fit.r_squared, r};
}

std::vector<int64_t> LogRankGrid(int64_t hi) {
  std::vector<int64_t> grid;
  for (int k = 0;; ++k) {
    const double r = std::round(
        std::pow(10.0, static_cast<double>(k) / kCrossoverGridPerDecade));
    const auto rank = static_cast<int64_t>(r);
    if (rank > hi) break;
    if (grid.empty() || grid.back() != rank) grid.push_back(rank);
  }
  return grid;
}

CrossoverFit DetectCrossover(const RankTable& table, int min_segment) {
  const int64_t hi = table.LastNonHapaxRank();
  const auto seg = static_cast<std::size_t>(std::max(min_segment, 2));
  const std::vector<int64_t> grid = LogRankGrid(hi);
  if (hi < 2 * static_cast<int64_t>(seg) || grid.size() < 2 * seg) {
    throw Error(ErrorCode::kRangeTooSmall,
                "crossover scan needs " + std::to_string(2 * seg) +
                    " log-grid ranks with count >= 2");
  }
  std::vector<double> x;
  std::vector<double> y;
  for (int64_t rank : grid) {
    x.push_back(std::log(static_cast<double>(rank)));
    y.push_back(std::log(table.entries[static_cast<std::size_t>(rank - 1)].prob));
  }
  CrossoverFit out;
  out.single_rss = SegmentRss(x, y, 0, x.size());
  std::size_t best_split = 0;
  double best = 0.0;
  bool have = false;
  for (std::size_t split = seg; split + seg <= x.size(); ++split) {
    const double rss = SegmentRss(x, y, 0, split) + SegmentRss(x, y, split, x.size());
    if (!have || rss < best) {
      have = true;
      best = rss;
      best_split = split;
    }
  }
  out.two_rss = best;
  out.breakpoint = grid[best_split - 1];
  const double noise_floor = 1e-12 * static_cast<double>(x.size());
  out.improvement = out.single_rss > noise_floor
                        ? (out.single_rss - out.two_rss) / out.single_rss
                        : 0.0;
  out.fit_low = FitPowerLaw(table, RankRange{1, out.breakpoint});
  out.fit_high = FitPowerLaw(table, RankRange{out.breakpoint + 1, hi});
  return out;
}

}  // namespace punctkit
