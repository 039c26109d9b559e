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

#ifndef PUNCTKIT_REGRESSION_H_
#define PUNCTKIT_REGRESSION_H_

#include <span>

namespace punctkit {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double rss = 0.0;           // residual sum of squares
  double slope_stderr = 0.0;  // 0 when fewer than three points
};

// Ordinary least squares y = intercept + slope * x. Requires x.size() ==
// y.size() >= 2 and non-constant x; throws kTooFewPoints otherwise.
LinearFit FitLine(std::span<const double> x, std::span<const double> y);

}  // namespace punctkit

#endif  // PUNCTKIT_REGRESSION_H_
