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

// Discrete Weibull distribution over k = 1, 2, ...:
//
//   F(k) = 1 - (1-p)^(k^beta)
//   P(k) = (1-p)^((k-1)^beta) - (1-p)^(k^beta)
//   h(k) = 1 - (1-p)^(k^beta - (k-1)^beta)
//
// beta = 1 is the geometric distribution; h(1) = p. Everything is evaluated in
// log space since (1-p)^(k^beta) underflows quickly for beta near 2.

#ifndef PUNCTKIT_WEIBULL_H_
#define PUNCTKIT_WEIBULL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "punctkit/series.h"

namespace punctkit {

struct WeibullParams {
  double p = 0.5;
  double beta = 1.0;

  bool IsValid() const;
};

struct WeibullPoint {
  double pmf = 0.0;
  double cmf = 0.0;
  double hazard = 0.0;
  double log_pmf = 0.0;
  // log(1 - F(k)).
  double log_survival = 0.0;
  // log(1 - h(k)) = (k^beta - (k-1)^beta) * log(1-p); stays strictly
  // monotone after hazard itself rounds to 1.
  double log_one_minus_hazard = 0.0;
};

// Throws kDomain for k < 1 or invalid params.
WeibullPoint DWeibullEval(int64_t k, const WeibullParams& params);

// Sum of log P(k_i). -inf for invalid params.
double WeibullLogLikelihood(std::span<const int64_t> values,
                            const WeibullParams& params);

struct WeibullFit {
  WeibullParams params;
  double log_likelihood = 0.0;
  std::size_t n = 0;
  double ks_distance = 0.0;  // max |empirical CMF - fitted CMF| on the support
};

struct WeibullFitOptions {
  std::size_t min_samples = 30;
  double relative_tolerance = 1e-6;
};

// Maximum likelihood: grid over p = 0.01..0.99 (step 0.01) and
// beta = 0.2..3.0 (step 0.05), then Nelder-Mead refinement from the best grid
// cell. Throws kSampleTooSmall, kDomain (values < 1) or kFitDiverged.
WeibullFit FitDiscreteWeibull(std::span<const int64_t> values,
                              const WeibullFitOptions& options = {});
WeibullFit FitDiscreteWeibull(const DistanceSeries& series,
                              const WeibullFitOptions& options = {});

enum class PlotKind { kEmpirical, kFitted };
std::string_view PlotKindName(PlotKind kind);

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
  PlotKind kind = PlotKind::kEmpirical;
};

struct PlotSeries {
  std::vector<PlotPoint> points;
  bool rescaled = false;
  // Bounds of the empirical (x, y) before rescaling; the rescaled map is
  // x' = (x - x_min) / (x_max - x_min), likewise for y.
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
};

// Weibull-plot coordinates x = ln k, y = ln(-ln(1 - F(k))) for every support
// point with F(k) < 1, plus the fitted line at the same x when `params` is
// given (slope beta, intercept ln(-ln(1-p))). `rescaled` min-max maps the
// empirical points onto [0,1]^2 and applies the same map to the fitted line.
// Throws kDegenerateSupport with fewer than two usable points.
PlotSeries WeibullPlot(const DistributionTable& table,
                       const std::optional<WeibullParams>& params,
                       bool rescaled);

}  // namespace punctkit

#endif  // PUNCTKIT_WEIBULL_H_
