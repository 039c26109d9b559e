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

// Multifractal detrended fluctuation analysis.
//
// Pipeline: mean-centered cumulative profile -> 2*M_s windows of length s
// taken from both ends -> order-m polynomial detrending per window -> q-order
// fluctuation functions F_q(s) -> h(q) from log-log slopes -> singularity
// spectrum by Legendre transform of tau(q) = q h(q) - 1.

#ifndef PUNCTKIT_MFDFA_H_
#define PUNCTKIT_MFDFA_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "punctkit/series.h"

namespace punctkit {

inline constexpr std::size_t kMinSeriesLength = 64;
inline constexpr int kDefaultDetrendOrder = 2;
inline constexpr int64_t kDefaultMinScale = 16;
inline constexpr int kDefaultScaleCount = 24;
inline constexpr std::size_t kMinRangePoints = 6;
// Below this length the report warns that a nonzero width may be spurious.
inline constexpr std::size_t kFiniteSizeWarningLength = 5000;

struct Profile {
  std::vector<double> values;
};

// profile[i] = sum_{j<=i} (u_j - mean(u)). Throws kSeriesTooShort for
// fewer than kMinSeriesLength values.
Profile ComputeProfile(std::span<const double> series);
Profile ComputeProfile(const DistanceSeries& series);

// Inclusive grid q_min, q_min + step, ... <= q_max (+ half-step slack). q = 0
// lands exactly on 0 whenever it is a grid point.
std::vector<double> QGrid(double q_min, double q_max, double step);

// `count` log-spaced integer scales from `min_scale` to floor(T / 4),
// deduplicated. Throws kScaleOutOfRange when floor(T / 4) < min_scale.
std::vector<int64_t> DefaultScales(std::size_t length,
                                   int64_t min_scale = kDefaultMinScale,
                                   int count = kDefaultScaleCount);

struct FluctuationMatrix {
  std::vector<int64_t> scales;  // ascending
  std::vector<double> qs;       // ascending
  std::vector<double> values;   // row-major [scale][q]
  int detrend_order = kDefaultDetrendOrder;
  std::size_t n = 0;

  double at(std::size_t scale_index, std::size_t q_index) const {
    return values[scale_index * qs.size() + q_index];
  }
};

// Throws kScaleOutOfRange (scales not ascending, max > T/4 or min < m + 2),
// kDomain (bad q grid or detrend order outside 1..4) or kZeroVariance naming
// the first window whose detrended variance vanishes. Results do not depend
// on `threads`.
FluctuationMatrix ComputeFluctuationMatrix(const Profile& profile,
                                           std::span<const int64_t> scales,
                                           std::span<const double> qs,
                                           int detrend_order,
                                           unsigned threads = 1);

struct ScaleRange {
  int64_t lo = 0;
  int64_t hi = 0;

  friend bool operator==(const ScaleRange&, const ScaleRange&) = default;
};

struct ScaleMode {
  enum class Kind { kAuto, kManual, kTwoRanges };
  Kind kind = Kind::kAuto;
  ScaleRange manual;  // kManual only

  static ScaleMode Auto() { return {}; }
  static ScaleMode TwoRanges() { return {Kind::kTwoRanges, {}}; }
  static ScaleMode Manual(int64_t lo, int64_t hi) {
    return {Kind::kManual, {lo, hi}};
  }
  friend bool operator==(const ScaleMode&, const ScaleMode&) = default;
};

// Fit windows for h(q), judged on the q = 2 column (closest q if 2 is absent):
//   kAuto: the contiguous window of >= 6 scales with the smallest residual
//          variance RSS / (n - 2); near-ties go to the longer window.
//   kTwoRanges: the split of the full grid into two adjacent windows (>= 6
//          scales each) with the smallest total RSS.
//   kManual: bounds-checked pass-through.
// Throws kRangeTooSmall (fewer than 8 scales, or 12 for kTwoRanges; bounds
// outside the grid; too few scales inside a manual window).
std::vector<ScaleRange> SelectScalingRange(const FluctuationMatrix& matrix,
                                           const ScaleMode& mode);

struct HurstFunction {
  std::vector<double> qs;
  std::vector<double> h;
  std::vector<double> stderr_h;
  ScaleRange range;
};

// Per-q OLS slope of ln F_q(s) on ln s over scales within `range`. Throws
// kRangeTooSmall for fewer than kMinRangePoints scales.
HurstFunction EstimateHq(const FluctuationMatrix& matrix,
                         const ScaleRange& range);

struct Spectrum {
  std::vector<double> qs;
  std::vector<double> alpha;
  std::vector<double> f;
  std::vector<bool> nonphysical;
  double delta_alpha = 0.0;  // over points not flagged nonphysical
};

// dh/dq by central differences (one-sided at the ends), alpha = h + q h',
// f = q (alpha - h) + 1. Walking outward from the q closest to 0, alpha must
// fall as q grows and rise as q shrinks; the first reversal and everything
// beyond it is flagged nonphysical. Throws kTooFewPoints below five q values.
Spectrum SingularitySpectrum(const HurstFunction& hq);

// "monofractal" (<= 0.1), "multifractal" (>= 0.2) or "indecisive".
std::string_view DeltaAlphaLabel(double delta_alpha);

struct MfdfaOptions {
  int detrend_order = kDefaultDetrendOrder;
  std::vector<double> qs = QGrid(-4.0, 4.0, 0.25);
  // Empty selects DefaultScales(T, min_scale, scale_count).
  std::vector<int64_t> scales;
  int64_t min_scale = kDefaultMinScale;
  int scale_count = kDefaultScaleCount;
  ScaleMode mode;
  unsigned threads = 1;
};

struct MfdfaResult {
  FluctuationMatrix matrix;
  std::vector<ScaleRange> ranges;
  std::vector<HurstFunction> hurst;  // one per range
  std::vector<Spectrum> spectra;     // one per range
  std::vector<std::string> warnings;
};

MfdfaResult RunMfdfa(std::span<const double> series,
                     const MfdfaOptions& options = {});
MfdfaResult RunMfdfa(const DistanceSeries& series,
                     const MfdfaOptions& options = {});

}  // namespace punctkit

#endif  // PUNCTKIT_MFDFA_H_
