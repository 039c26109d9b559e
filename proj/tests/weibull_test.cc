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

#include "punctkit/weibull.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "generators.h"
#include "punctkit/error.h"
#include "punctkit/regression.h"

namespace punctkit {
namespace {

// Direct closed forms in long double, no log-space tricks.
long double OracleSurvival(int64_t k, double p, double beta) {
  return std::pow(1.0L - p, std::pow(static_cast<long double>(k), beta));
}
long double OraclePmf(int64_t k, double p, double beta) {
  return OracleSurvival(k - 1, p, beta) - OracleSurvival(k, p, beta);
}

std::vector<WeibullParams> RandomParams(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> p(0.01, 0.99);
  std::uniform_real_distribution<double> beta(0.2, 3.0);
  std::vector<WeibullParams> out;
  for (int i = 0; i < n; ++i) out.push_back({p(rng), beta(rng)});
  return out;
}

TEST(DWeibullEvalTest, FirstTrialEqualsP) {
  for (double beta : {0.3, 1.0, 2.7}) {
    const auto pt = DWeibullEval(1, {0.3, beta});
    EXPECT_EQ(pt.pmf, 0.3);
    EXPECT_EQ(pt.cmf, 0.3);
    EXPECT_EQ(pt.hazard, 0.3);
  }
}

TEST(DWeibullEvalTest, GeometricReduction) {
  const auto pt = DWeibullEval(2, {0.5, 1.0});
  EXPECT_NEAR(pt.pmf, 0.25, 1e-15);
  EXPECT_NEAR(pt.cmf, 0.75, 1e-15);
  EXPECT_NEAR(pt.hazard, 0.5, 1e-15);
}

TEST(DWeibullEvalTest, Telescoping) {
  const WeibullParams params{0.2, 1.5};
  EXPECT_NEAR(DWeibullEval(4, params).pmf,
              DWeibullEval(4, params).cmf - DWeibullEval(3, params).cmf, 1e-15);
}

TEST(DWeibullEvalTest, MatchesClosedFormOracle) {
  for (const auto& params : RandomParams(100, 1)) {
    for (int64_t k = 1; k <= 60; ++k) {
      const auto pt = DWeibullEval(k, params);
      EXPECT_NEAR(pt.pmf, static_cast<double>(OraclePmf(k, params.p, params.beta)), 1e-14);
      EXPECT_NEAR(pt.cmf, static_cast<double>(1.0L - OracleSurvival(k, params.p, params.beta)),
                  1e-14);
    }
  }
}

TEST(DWeibullEvalTest, LogSpaceSurvivesLargeK) {
  // (1-p)^(k^beta) underflows double for these arguments; log values do not.
  const auto pt = DWeibullEval(100000, {0.5, 2.0});
  EXPECT_EQ(pt.cmf, 1.0);
  EXPECT_TRUE(std::isfinite(pt.log_survival));
  EXPECT_NEAR(pt.log_survival, std::log(0.5) * 1e10, 1e-3);
  EXPECT_TRUE(std::isfinite(pt.log_pmf));
}

TEST(DWeibullEvalTest, DomainErrors) {
  for (auto [k, p, beta] : {std::tuple{0L, 0.5, 1.0}, std::tuple{1L, 0.0, 1.0},
                            std::tuple{1L, 1.0, 1.0}, std::tuple{1L, 0.5, 0.0},
                            std::tuple{1L, 0.5, -1.0}}) {
    try {
      DWeibullEval(k, {p, beta});
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDomain);
    }
  }
}

TEST(DWeibullPropertyTest, PartialSumsEqualCmf) {
  for (const auto& params : RandomParams(100, 2)) {
    double sum = 0.0;
    for (int64_t k = 1; k <= 10000; ++k) sum += DWeibullEval(k, params).pmf;
    EXPECT_NEAR(sum, DWeibullEval(10000, params).cmf, 1e-12);
  }
}

TEST(DWeibullPropertyTest, HazardIdentity) {
  for (const auto& params : RandomParams(100, 3)) {
    for (int64_t k = 2; k <= 500; ++k) {
      const auto pt = DWeibullEval(k, params);
      const auto prev = DWeibullEval(k - 1, params);
      const double survival_prev = std::exp(prev.log_survival);
      if (survival_prev > 1e-250) {
        EXPECT_NEAR(pt.hazard, pt.pmf / survival_prev, 1e-12);
      }
      // Log form holds everywhere: log(1 - h(k)) = log S(k) - log S(k-1).
      EXPECT_NEAR(pt.log_one_minus_hazard, pt.log_survival - prev.log_survival,
                  1e-9 * std::max(1.0, std::abs(pt.log_survival)));
    }
  }
}

TEST(DWeibullPropertyTest, HazardMonotonicityFollowsBeta) {
  auto params = RandomParams(100, 4);
  params.push_back({0.4, 1.0});
  for (const auto& prm : params) {
    // -log(1 - h) is strictly monotone exactly when h is; it does not
    // saturate at 1 the way h itself does in double precision.
    double last = -DWeibullEval(1, prm).log_one_minus_hazard;
    for (int64_t k = 2; k <= 500; ++k) {
      const double cur = -DWeibullEval(k, prm).log_one_minus_hazard;
      if (prm.beta > 1.0) {
        EXPECT_GT(cur, last) << prm.p << " " << prm.beta << " k=" << k;
      } else if (prm.beta < 1.0) {
        EXPECT_LT(cur, last) << prm.p << " " << prm.beta << " k=" << k;
      } else {
        EXPECT_NEAR(cur, last, 1e-15);
      }
      last = cur;
    }
  }
}

// Exhaustive grid oracle for the likelihood, using the closed-form pmf.
double OracleLogLikelihood(const std::vector<int64_t>& values, double p, double beta) {
  double ll = 0.0;
  for (int64_t v : values) ll += std::log(static_cast<double>(OraclePmf(v, p, beta)));
  return ll;
}

TEST(FitDiscreteWeibullTest, RecoversParameters) {
  std::mt19937_64 rng(42);
  const auto sample = testing::SampleDiscreteWeibull(0.2, 1.5, 100000, rng);
  const auto fit = FitDiscreteWeibull(sample);
  EXPECT_NEAR(fit.params.p, 0.2, 0.01);
  EXPECT_NEAR(fit.params.beta, 1.5, 0.03);
  EXPECT_EQ(fit.n, sample.size());
  EXPECT_TRUE(std::isfinite(fit.log_likelihood));
  EXPECT_GE(fit.ks_distance, 0.0);
  EXPECT_LE(fit.ks_distance, 0.01);
}

TEST(FitDiscreteWeibullTest, GeometricSampleGivesBetaOne) {
  std::mt19937_64 rng(43);
  const auto sample = testing::SampleGeometricByTrials(0.5, 100000, rng);
  const auto fit = FitDiscreteWeibull(sample);
  EXPECT_NEAR(fit.params.beta, 1.0, 0.03);
  EXPECT_NEAR(fit.params.p, 0.5, 0.01);
}

TEST(FitDiscreteWeibullTest, BeatsEveryGridPointOfTheOracle) {
  std::mt19937_64 rng(44);
  const auto sample = testing::SampleDiscreteWeibull(0.35, 0.8, 2000, rng);
  const auto fit = FitDiscreteWeibull(sample);
  double best = -INFINITY;
  for (int i = 1; i <= 99; ++i) {
    for (int j = 0; j <= 56; ++j) {
      best = std::max(best, OracleLogLikelihood(sample, 0.01 * i, 0.2 + 0.05 * j));
    }
  }
  EXPECT_GE(fit.log_likelihood, best - 1e-6);
  EXPECT_NEAR(fit.log_likelihood, OracleLogLikelihood(sample, fit.params.p, fit.params.beta),
              1e-6 * std::abs(fit.log_likelihood));
}

TEST(FitDiscreteWeibullTest, ErrorShrinksWithSampleSize) {
  std::mt19937_64 rng(45);
  std::vector<double> mean_error;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    double err = 0.0;
    constexpr int kReps = 6;
    for (int rep = 0; rep < kReps; ++rep) {
      const auto fit = FitDiscreteWeibull(testing::SampleDiscreteWeibull(0.1, 1.9, n, rng));
      err += std::abs(fit.params.beta - 1.9) + std::abs(fit.params.p - 0.1);
    }
    mean_error.push_back(err / kReps);
  }
  EXPECT_GT(mean_error[0], mean_error[1]);
  EXPECT_GT(mean_error[1], mean_error[2]);
}

TEST(FitDiscreteWeibullTest, SampleTooSmall) {
  const std::vector<int64_t> few(29, 3);
  try {
    FitDiscreteWeibull(few);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSampleTooSmall);
  }
  WeibullFitOptions options;
  options.min_samples = 10;
  std::vector<int64_t> ok = {1, 2, 3, 1, 2, 5, 1, 1, 2, 4};
  EXPECT_NO_THROW(FitDiscreteWeibull(ok, options));
}

DistributionTable ExactTable(double p, double beta, int64_t kmax) {
  DistributionTable t;
  double prev = 0.0;
  for (int64_t k = 1; k <= kmax; ++k) {
    const double cmf = static_cast<double>(1.0L - OracleSurvival(k, p, beta));
    t.support.push_back(k);
    t.cmf.push_back(cmf);
    t.pmf.push_back(cmf - prev);
    prev = cmf;
  }
  return t;
}

TEST(WeibullPlotTest, ExactCmfIsALineWithSlopeBeta) {
  const double p = 0.3;
  const double beta = 1.6;
  const auto plot = WeibullPlot(ExactTable(p, beta, 50), WeibullParams{p, beta}, false);
  const double intercept = std::log(-std::log1p(-p));
  int checked = 0;
  for (const auto& pt : plot.points) {
    if (pt.kind != PlotKind::kEmpirical) continue;
    const double k = std::exp(pt.x);
    const double survival = static_cast<double>(OracleSurvival(std::llround(k), p, beta));
    // F is stored in double, so 1 - F carries an absolute error up to one
    // ulp of 1; propagate that through log(-log(1 - F)).
    const double input_bound = 2.3e-16 / (survival * std::abs(std::log(survival)));
    const double residual = std::abs(pt.y - (beta * pt.x + intercept));
    if (survival >= 1e-8) {
      EXPECT_LT(residual, 1e-9) << "k=" << k;
      ++checked;
    } else {
      EXPECT_LT(residual, 1e-9 + input_bound) << "k=" << k;
    }
  }
  EXPECT_GE(checked, 10);
  for (const auto& pt : plot.points) {
    if (pt.kind == PlotKind::kFitted) {
      EXPECT_NEAR(pt.y, beta * pt.x + intercept, 1e-12);
    }
  }
}

TEST(WeibullPlotTest, WellConditionedTableIsExactlyLinear) {
  // With p small the CMF stays far from 1 over k = 1..50.
  const double beta = 1.6;
  const auto plot = WeibullPlot(ExactTable(0.03, beta, 50), std::nullopt, false);
  ASSERT_EQ(plot.points.size(), 50u);
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& pt : plot.points) {
    x.push_back(pt.x);
    y.push_back(pt.y);
  }
  const LinearFit line = FitLine(x, y);
  EXPECT_NEAR(line.slope, beta, 1e-9);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_LT(std::abs(y[i] - (line.slope * x[i] + line.intercept)), 1e-9);
  }
}

TEST(WeibullPlotTest, RescaledFillsUnitSquare) {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sample = testing::SampleDiscreteWeibull(0.05 + 0.02 * trial, 0.7 + 0.05 * trial,
                                                       3000, rng);
    const auto table = EmpiricalDistribution(sample);
    const auto fit = FitDiscreteWeibull(sample);
    const auto plot = WeibullPlot(table, fit.params, true);
    double xmin = 1, xmax = 0, ymin = 1, ymax = 0;
    for (const auto& pt : plot.points) {
      EXPECT_GE(pt.x, 0.0);
      EXPECT_LE(pt.x, 1.0);
      EXPECT_GE(pt.y, 0.0);
      EXPECT_LE(pt.y, 1.0);
      if (pt.kind == PlotKind::kEmpirical) {
        xmin = std::min(xmin, pt.x);
        xmax = std::max(xmax, pt.x);
        ymin = std::min(ymin, pt.y);
        ymax = std::max(ymax, pt.y);
      }
    }
    EXPECT_EQ(xmin, 0.0);
    EXPECT_EQ(xmax, 1.0);
    EXPECT_EQ(ymin, 0.0);
    EXPECT_EQ(ymax, 1.0);
  }
}

TEST(WeibullPlotTest, GeometricSampleHasUnitSlope) {
  std::mt19937_64 rng(47);
  const auto sample = testing::SampleGeometricByTrials(0.3, 100000, rng);
  const auto plot = WeibullPlot(EmpiricalDistribution(sample), std::nullopt, false);
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& pt : plot.points) {
    x.push_back(pt.x);
    y.push_back(pt.y);
  }
  EXPECT_NEAR(FitLine(x, y).slope, 1.0, 0.05);
}

TEST(WeibullPlotTest, DegenerateSupport) {
  DistributionTable t;
  t.support = {3};
  t.pmf = {1.0};
  t.cmf = {1.0};
  t.n = 10;
  try {
    WeibullPlot(t, std::nullopt, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateSupport);
  }
}

}  // namespace
}  // namespace punctkit
