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

#include "punctkit/mfdfa.h"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

#include "punctkit/error.h"
#include "punctkit/regression.h"

namespace punctkit {

namespace {

// Orthonormal basis (s x (m+1)) of polynomials of degree <= m sampled on
// k = 1..s. Projecting a window onto it gives the least-squares trend.
Eigen::MatrixXd PolynomialBasis(int64_t s, int m) {
  Eigen::MatrixXd vandermonde(s, m + 1);
  const double center = (static_cast<double>(s) + 1.0) / 2.0;
  for (int64_t k = 0; k < s; ++k) {
    const double t = (static_cast<double>(k + 1) - center) / static_cast<double>(s);
    double power = 1.0;
    for (int j = 0; j <= m; ++j) {
      vandermonde(k, j) = power;
      power *= t;
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(vandermonde);
  return qr.householderQ() * Eigen::MatrixXd::Identity(s, m + 1);
}

struct ScaleResult {
  std::vector<double> log_f;  // ln F_q(s) per q
  std::optional<std::size_t> zero_window;
};

ScaleResult ComputeScale(const std::vector<double>& profile, int64_t s,
                         std::span<const double> qs, int m) {
  const auto T = static_cast<int64_t>(profile.size());
  const int64_t windows = T / s;
  const Eigen::MatrixXd basis = PolynomialBasis(s, m);
  const Eigen::Map<const Eigen::VectorXd> all(profile.data(), T);

  ScaleResult out;
  std::vector<double> log_f2;
  log_f2.reserve(static_cast<std::size_t>(2 * windows));
  for (int64_t nu = 0; nu < 2 * windows; ++nu) {
    const int64_t start = nu < windows ? nu * s : T - (nu - windows + 1) * s;
    const Eigen::VectorXd y = all.segment(start, s);
    const Eigen::VectorXd residual = y - basis * (basis.transpose() * y);
    const double mean = residual.mean();
    const double f2 = (residual.array() - mean).square().sum() / static_cast<double>(s);
    const double scale2 = y.squaredNorm() / static_cast<double>(s);
    if (!(f2 > 1e-20 * scale2) || !(f2 > 0.0)) {
      out.zero_window = static_cast<std::size_t>(nu);
      return out;
    }
    log_f2.push_back(std::log(f2));
  }

  const double count = static_cast<double>(log_f2.size());
  out.log_f.reserve(qs.size());
  for (double q : qs) {
    if (q == 0.0) {
      double sum = 0.0;
      for (double v : log_f2) sum += v;
      out.log_f.push_back(0.5 * sum / count);
      continue;
    }
    // ln F_q = (1/q) ln( mean exp(q/2 ln f2) ), evaluated stably.
    double peak = -std::numeric_limits<double>::infinity();
    for (double v : log_f2) peak = std::max(peak, 0.5 * q * v);
    double sum = 0.0;
    for (double v : log_f2) sum += std::exp(0.5 * q * v - peak);
    out.log_f.push_back((peak + std::log(sum / count)) / q);
  }
  return out;
}

std::size_t ClosestIndex(const std::vector<double>& values, double target) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::abs(values[i] - target) < std::abs(values[best] - target)) best = i;
  }
  return best;
}

// ln s and ln F_2(s) columns used for range selection.
void LogColumns(const FluctuationMatrix& matrix, std::vector<double>* x,
                std::vector<double>* y) {
  const std::size_t qi = ClosestIndex(matrix.qs, 2.0);
  for (std::size_t si = 0; si < matrix.scales.size(); ++si) {
    x->push_back(std::log(static_cast<double>(matrix.scales[si])));
    y->push_back(std::log(matrix.at(si, qi)));
  }
}

double Rss(const std::vector<double>& x, const std::vector<double>& y,
           std::size_t begin, std::size_t end) {
  return FitLine(std::span(x).subspan(begin, end - begin),
                 std::span(y).subspan(begin, end - begin))
      .rss;
}

}  // namespace

Profile ComputeProfile(std::span<const double> series) {
  if (series.size() < kMinSeriesLength) {
    throw Error(ErrorCode::kSeriesTooShort,
                "MFDFA needs at least " + std::to_string(kMinSeriesLength) +
                    " values, got " + std::to_string(series.size()));
  }
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(series.size());
  Profile profile;
  profile.values.reserve(series.size());
  double running = 0.0;
  for (double v : series) {
    running += v - mean;
    profile.values.push_back(running);
  }
  return profile;
}

Profile ComputeProfile(const DistanceSeries& series) {
  std::vector<double> values(series.values.begin(), series.values.end());
  return ComputeProfile(values);
}

std::vector<double> QGrid(double q_min, double q_max, double step) {
  if (!(step > 0.0) || !(q_max >= q_min)) {
    throw Error(ErrorCode::kDomain, "q grid needs step > 0 and q_max >= q_min");
  }
  std::vector<double> qs;
  const auto count = static_cast<int64_t>(std::floor((q_max - q_min) / step + 0.5));
  for (int64_t i = 0; i <= count; ++i) {
    double q = q_min + static_cast<double>(i) * step;
    if (std::abs(q) < 1e-9 * step) q = 0.0;
    qs.push_back(q);
  }
  return qs;
}

std::vector<int64_t> DefaultScales(std::size_t length, int64_t min_scale,
                                   int count) {
  const auto max_scale = static_cast<int64_t>(length / 4);
  if (max_scale < min_scale || count < 2) {
    throw Error(ErrorCode::kScaleOutOfRange,
                "series of length " + std::to_string(length) +
                    " cannot support scales from " + std::to_string(min_scale));
  }
  std::vector<int64_t> scales;
  const double lo = std::log(static_cast<double>(min_scale));
  const double hi = std::log(static_cast<double>(max_scale));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    const auto s = static_cast<int64_t>(std::llround(std::exp(lo + t * (hi - lo))));
    const int64_t clamped = std::clamp(s, min_scale, max_scale);
    if (scales.empty() || scales.back() != clamped) scales.push_back(clamped);
  }
  return scales;
}

FluctuationMatrix ComputeFluctuationMatrix(const Profile& profile,
                                           std::span<const int64_t> scales,
                                           std::span<const double> qs,
                                           int detrend_order,
                                           unsigned threads) {
  const std::size_t T = profile.values.size();
  if (detrend_order < 1 || detrend_order > 4) {
    throw Error(ErrorCode::kDomain, "detrend order must be within 1..4");
  }
  if (scales.empty() || qs.empty()) {
    throw Error(ErrorCode::kScaleOutOfRange, "empty scale or q grid");
  }
  for (std::size_t i = 1; i < scales.size(); ++i) {
    if (scales[i] <= scales[i - 1]) {
      throw Error(ErrorCode::kScaleOutOfRange, "scales must be strictly ascending");
    }
  }
  for (std::size_t i = 1; i < qs.size(); ++i) {
    if (!(qs[i] > qs[i - 1])) {
      throw Error(ErrorCode::kDomain, "q values must be strictly ascending");
    }
  }
  if (scales.front() < detrend_order + 2 ||
      scales.back() > static_cast<int64_t>(T / 4)) {
    throw Error(ErrorCode::kScaleOutOfRange,
                "scales must lie within [" + std::to_string(detrend_order + 2) +
                    ", " + std::to_string(T / 4) + "]");
  }

  std::vector<ScaleResult> results(scales.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < scales.size(); i = next++) {
      results[i] = ComputeScale(profile.values, scales[i], qs, detrend_order);
    }
  };
  const unsigned workers = std::clamp<unsigned>(
      threads == 0 ? std::thread::hardware_concurrency() : threads, 1,
      static_cast<unsigned>(scales.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  FluctuationMatrix matrix;
  matrix.scales.assign(scales.begin(), scales.end());
  matrix.qs.assign(qs.begin(), qs.end());
  matrix.detrend_order = detrend_order;
  matrix.n = T;
  matrix.values.reserve(scales.size() * qs.size());
  for (std::size_t si = 0; si < scales.size(); ++si) {
    if (results[si].zero_window) {
      throw Error(ErrorCode::kZeroVariance,
                  "zero detrended variance at scale " + std::to_string(scales[si]) +
                      ", window " + std::to_string(*results[si].zero_window));
    }
    for (double lf : results[si].log_f) matrix.values.push_back(std::exp(lf));
  }
  return matrix;
}

std::vector<ScaleRange> SelectScalingRange(const FluctuationMatrix& matrix,
                                           const ScaleMode& mode) {
  const std::size_t n = matrix.scales.size();
  if (n < 8) {
    throw Error(ErrorCode::kRangeTooSmall,
                "scaling-range selection needs at least 8 scales");
  }
  if (mode.kind == ScaleMode::Kind::kManual) {
    const ScaleRange r = mode.manual;
    const auto inside = std::count_if(
        matrix.scales.begin(), matrix.scales.end(),
        [&](int64_t s) { return s >= r.lo && s <= r.hi; });
    if (r.lo < matrix.scales.front() || r.hi > matrix.scales.back() ||
        static_cast<std::size_t>(inside) < kMinRangePoints) {
      throw Error(ErrorCode::kRangeTooSmall,
                  "manual range [" + std::to_string(r.lo) + ", " +
                      std::to_string(r.hi) + "] must lie within [" +
                      std::to_string(matrix.scales.front()) + ", " +
                      std::to_string(matrix.scales.back()) + "] and cover " +
                      std::to_string(kMinRangePoints) + " scales");
    }
    return {r};
  }

  std::vector<double> x;
  std::vector<double> y;
  LogColumns(matrix, &x, &y);

  if (mode.kind == ScaleMode::Kind::kTwoRanges) {
    constexpr std::size_t kMinSide = kMinRangePoints;
    if (n < 2 * kMinSide) {
      throw Error(ErrorCode::kRangeTooSmall,
                  "two scaling ranges need at least " +
                      std::to_string(2 * kMinSide) + " scales");
    }
    std::size_t best_split = kMinSide;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t split = kMinSide; split + kMinSide <= n; ++split) {
      const double rss = Rss(x, y, 0, split) + Rss(x, y, split, n);
      if (rss < best) {
        best = rss;
        best_split = split;
      }
    }
    return {ScaleRange{matrix.scales[0], matrix.scales[best_split - 1]},
            ScaleRange{matrix.scales[best_split], matrix.scales[n - 1]}};
  }

  std::size_t best_lo = 0;
  std::size_t best_hi = n - 1;
  double best = 0.0;
  bool have = false;
  for (std::size_t lo = 0; lo < n; ++lo) {
    for (std::size_t hi = lo + kMinRangePoints - 1; hi < n; ++hi) {
      const std::size_t points = hi - lo + 1;
      const double msr = Rss(x, y, lo, hi + 1) / static_cast<double>(points - 2);
      const double tol = 1e-9 * best + 1e-24;
      const bool better = msr < best - tol;
      const bool tie_longer =
          std::abs(msr - best) <= tol && points > best_hi - best_lo + 1;
      if (!have || better || tie_longer) {
        have = true;
        best = msr;
        best_lo = lo;
        best_hi = hi;
      }
    }
  }
  return {ScaleRange{matrix.scales[best_lo], matrix.scales[best_hi]}};
}

HurstFunction EstimateHq(const FluctuationMatrix& matrix,
                         const ScaleRange& range) {
  std::vector<std::size_t> rows;
  for (std::size_t si = 0; si < matrix.scales.size(); ++si) {
    if (matrix.scales[si] >= range.lo && matrix.scales[si] <= range.hi) {
      rows.push_back(si);
    }
  }
  if (rows.size() < kMinRangePoints) {
    throw Error(ErrorCode::kRangeTooSmall,
                "h(q) fit needs " + std::to_string(kMinRangePoints) +
                    " scales in [" + std::to_string(range.lo) + ", " +
                    std::to_string(range.hi) + "]");
  }
  HurstFunction out;
  out.qs = matrix.qs;
  out.range = range;
  std::vector<double> x;
  for (std::size_t si : rows) {
    x.push_back(std::log(static_cast<double>(matrix.scales[si])));
  }
  std::vector<double> y(rows.size());
  for (std::size_t qi = 0; qi < matrix.qs.size(); ++qi) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      y[r] = std::log(matrix.at(rows[r], qi));
    }
    const LinearFit fit = FitLine(x, y);
    out.h.push_back(fit.slope);
    out.stderr_h.push_back(fit.slope_stderr);
  }
  return out;
}

Spectrum SingularitySpectrum(const HurstFunction& hq) {
  const std::size_t n = hq.qs.size();
  if (n < 5 || hq.h.size() != n) {
    throw Error(ErrorCode::kTooFewPoints,
                "singularity spectrum needs at least five q values");
  }
  const auto& q = hq.qs;
  const auto& h = hq.h;
  std::vector<double> dh(n);
  dh[0] = (h[1] - h[0]) / (q[1] - q[0]);
  dh[n - 1] = (h[n - 1] - h[n - 2]) / (q[n - 1] - q[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double left = q[i] - q[i - 1];
    const double right = q[i + 1] - q[i];
    const double slope_left = (h[i] - h[i - 1]) / left;
    const double slope_right = (h[i + 1] - h[i]) / right;
    dh[i] = (slope_right * left + slope_left * right) / (left + right);
  }

  Spectrum out;
  out.qs = q;
  out.alpha.resize(n);
  out.f.resize(n);
  out.nonphysical.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    out.alpha[i] = h[i] + q[i] * dh[i];
    out.f[i] = q[i] * (out.alpha[i] - h[i]) + 1.0;
  }

  constexpr double kTolerance = 1e-12;
  const std::size_t anchor = ClosestIndex(q, 0.0);
  double previous = out.alpha[anchor];
  bool broken = false;
  for (std::size_t i = anchor + 1; i < n; ++i) {
    broken = broken || out.alpha[i] > previous + kTolerance;
    out.nonphysical[i] = broken;
    if (!broken) previous = out.alpha[i];
  }
  previous = out.alpha[anchor];
  broken = false;
  for (std::size_t i = anchor; i-- > 0;) {
    broken = broken || out.alpha[i] < previous - kTolerance;
    out.nonphysical[i] = broken;
    if (!broken) previous = out.alpha[i];
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (out.nonphysical[i]) continue;
    lo = std::min(lo, out.alpha[i]);
    hi = std::max(hi, out.alpha[i]);
  }
  out.delta_alpha = hi - lo;
  return out;
}

std::string_view DeltaAlphaLabel(double delta_alpha) {
  if (delta_alpha <= 0.1) return "monofractal";
  if (delta_alpha >= 0.2) return "multifractal";
  return "indecisive";
}

MfdfaResult RunMfdfa(std::span<const double> series,
                     const MfdfaOptions& options) {
  const Profile profile = ComputeProfile(series);
  const std::vector<int64_t> scales =
      options.scales.empty()
          ? DefaultScales(series.size(), options.min_scale, options.scale_count)
          : options.scales;
  MfdfaResult result;
  result.matrix = ComputeFluctuationMatrix(profile, scales, options.qs,
                                           options.detrend_order, options.threads);
  result.ranges = SelectScalingRange(result.matrix, options.mode);
  for (const ScaleRange& range : result.ranges) {
    result.hurst.push_back(EstimateHq(result.matrix, range));
    result.spectra.push_back(SingularitySpectrum(result.hurst.back()));
  }
  if (series.size() < kFiniteSizeWarningLength) {
    result.warnings.push_back(
        "series length " + std::to_string(series.size()) + " < " +
        std::to_string(kFiniteSizeWarningLength) +
        ": finite-size effects can produce a spuriously wide spectrum");
  }
  return result;
}

MfdfaResult RunMfdfa(const DistanceSeries& series, const MfdfaOptions& options) {
  std::vector<double> values(series.values.begin(), series.values.end());
  return RunMfdfa(values, options);
}

}  // namespace punctkit
