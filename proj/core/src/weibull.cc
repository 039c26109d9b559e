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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

#include "punctkit/error.h"

namespace punctkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distinct values with multiplicities; the likelihood only needs these.
struct Histogram {
  std::vector<int64_t> value;
  std::vector<double> count;
};

Histogram MakeHistogram(std::span<const int64_t> values) {
  std::map<int64_t, std::size_t> counts;
  for (int64_t v : values) ++counts[v];
  Histogram h;
  for (const auto& [v, c] : counts) {
    h.value.push_back(v);
    h.count.push_back(static_cast<double>(c));
  }
  return h;
}

double LogPmf(int64_t k, double log_q, double beta) {
  const double a = k == 1 ? 0.0 : std::pow(static_cast<double>(k - 1), beta);
  const double b = std::pow(static_cast<double>(k), beta);
  return log_q * a + std::log(-std::expm1(log_q * (b - a)));
}

double HistogramLogLikelihood(const Histogram& h, const WeibullParams& params) {
  if (!params.IsValid()) return -kInf;
  const double log_q = std::log1p(-params.p);
  double ll = 0.0;
  for (std::size_t i = 0; i < h.value.size(); ++i) {
    ll += h.count[i] * LogPmf(h.value[i], log_q, params.beta);
  }
  return std::isnan(ll) ? -kInf : ll;
}

// Nelder-Mead on the negative log-likelihood in (p, beta).
WeibullParams Refine(const Histogram& h, WeibullParams start,
                     double relative_tolerance) {
  using Vertex = std::array<double, 2>;
  auto cost = [&](const Vertex& v) {
    return -HistogramLogLikelihood(h, WeibullParams{v[0], v[1]});
  };
  std::array<Vertex, 3> simplex = {
      Vertex{start.p, start.beta},
      Vertex{start.p + (start.p < 0.5 ? 0.005 : -0.005), start.beta},
      Vertex{start.p, start.beta + 0.025},
  };
  std::array<double, 3> f{};
  for (int i = 0; i < 3; ++i) f[i] = cost(simplex[i]);

  for (int iter = 0; iter < 10000; ++iter) {
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
    const Vertex best = simplex[order[0]];
    const Vertex mid = simplex[order[1]];
    const Vertex worst = simplex[order[2]];
    const double f_best = f[order[0]];
    const double f_mid = f[order[1]];
    const double f_worst = f[order[2]];

    double spread = 0.0;
    for (int d = 0; d < 2; ++d) {
      const double scale = std::max(std::abs(best[d]), 1e-12);
      spread = std::max(spread, std::abs(mid[d] - best[d]) / scale);
      spread = std::max(spread, std::abs(worst[d] - best[d]) / scale);
    }
    const double f_spread = std::abs(f_worst - f_best);
    if (spread <= relative_tolerance &&
        f_spread <= relative_tolerance * (std::abs(f_best) + 1e-300)) {
      break;
    }

    const Vertex centroid = {(best[0] + mid[0]) / 2, (best[1] + mid[1]) / 2};
    auto along = [&](double t) {
      return Vertex{centroid[0] + t * (worst[0] - centroid[0]),
                    centroid[1] + t * (worst[1] - centroid[1])};
    };
    const Vertex reflected = along(-1.0);
    const double f_reflected = cost(reflected);
    if (f_reflected < f_best) {
      const Vertex expanded = along(-2.0);
      const double f_expanded = cost(expanded);
      if (f_expanded < f_reflected) {
        simplex[order[2]] = expanded;
        f[order[2]] = f_expanded;
      } else {
        simplex[order[2]] = reflected;
        f[order[2]] = f_reflected;
      }
      continue;
    }
    if (f_reflected < f_mid) {
      simplex[order[2]] = reflected;
      f[order[2]] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < f_worst;
    const Vertex contracted = along(outside ? -0.5 : 0.5);
    const double f_contracted = cost(contracted);
    if (f_contracted < (outside ? f_reflected : f_worst)) {
      simplex[order[2]] = contracted;
      f[order[2]] = f_contracted;
      continue;
    }
    // Shrink toward the best vertex.
    for (int i : {order[1], order[2]}) {
      simplex[i] = {best[0] + 0.5 * (simplex[i][0] - best[0]),
                    best[1] + 0.5 * (simplex[i][1] - best[1])};
      f[i] = cost(simplex[i]);
    }
  }
  const int best = static_cast<int>(std::min_element(f.begin(), f.end()) - f.begin());
  return WeibullParams{simplex[best][0], simplex[best][1]};
}

// After min-max rescaling the empirical points fill [0,1]^2 exactly, but the
// fitted line may leave the square. Keep the in-square fitted points and add
// the line's intersections with the square boundary, so the fitted series is
// still the same straight line, drawn only inside the plot area.
void ClipFittedToUnitSquare(std::vector<PlotPoint>& points) {
  std::vector<PlotPoint> fitted;
  std::vector<PlotPoint> kept;
  for (const auto& pt : points) {
    (pt.kind == PlotKind::kFitted ? fitted : kept).push_back(pt);
  }
  if (fitted.size() < 2) return;
  const PlotPoint& a = fitted.front();
  const PlotPoint& b = fitted.back();
  const double slope = (b.y - a.y) / (b.x - a.x);
  const double intercept = a.y - slope * a.x;
  const auto inside = [](double v) { return v >= 0.0 && v <= 1.0; };
  std::vector<PlotPoint> line;
  for (const auto& pt : fitted) {
    if (inside(pt.x) && inside(pt.y)) line.push_back(pt);
  }
  // Boundary crossings: x = 0, x = 1, y = 0, y = 1.
  for (double x : {0.0, 1.0}) {
    const double y = slope * x + intercept;
    if (inside(y)) line.push_back({x, y, PlotKind::kFitted});
  }
  if (slope != 0.0) {
    for (double y : {0.0, 1.0}) {
      const double x = (y - intercept) / slope;
      if (inside(x)) line.push_back({x, y, PlotKind::kFitted});
    }
  }
  std::sort(line.begin(), line.end(),
            [](const PlotPoint& l, const PlotPoint& r) { return l.x < r.x; });
  line.erase(std::unique(line.begin(), line.end(),
                         [](const PlotPoint& l, const PlotPoint& r) {
                           return l.x == r.x && l.y == r.y;
                         }),
             line.end());
  kept.insert(kept.end(), line.begin(), line.end());
  points = std::move(kept);
}

}  // namespace

bool WeibullParams::IsValid() const {
  return p > 0.0 && p < 1.0 && beta > 0.0 && std::isfinite(beta);
}

WeibullPoint DWeibullEval(int64_t k, const WeibullParams& params) {
  if (k < 1) {
    throw Error(ErrorCode::kDomain, "discrete Weibull support starts at k = 1");
  }
  if (!params.IsValid()) {
    throw Error(ErrorCode::kDomain, "discrete Weibull needs 0 < p < 1, beta > 0");
  }
  const double log_q = std::log1p(-params.p);
  if (k == 1) {
    // pmf(1) = cmf(1) = h(1) = p exactly; avoid the log1p/expm1 round trip.
    WeibullPoint out;
    out.pmf = out.cmf = out.hazard = params.p;
    out.log_pmf = std::log(params.p);
    out.log_survival = out.log_one_minus_hazard = log_q;
    return out;
  }
  const double a = std::pow(static_cast<double>(k - 1), params.beta);
  const double b = std::pow(static_cast<double>(k), params.beta);
  WeibullPoint out;
  out.log_survival = log_q * b;
  out.cmf = -std::expm1(out.log_survival);
  out.log_one_minus_hazard = log_q * (b - a);
  out.hazard = -std::expm1(out.log_one_minus_hazard);
  out.log_pmf = log_q * a + std::log(out.hazard);
  out.pmf = std::exp(log_q * a) * out.hazard;
  return out;
}

double WeibullLogLikelihood(std::span<const int64_t> values,
                            const WeibullParams& params) {
  return HistogramLogLikelihood(MakeHistogram(values), params);
}

WeibullFit FitDiscreteWeibull(std::span<const int64_t> values,
                              const WeibullFitOptions& options) {
  if (values.size() < options.min_samples) {
    throw Error(ErrorCode::kSampleTooSmall,
                "Weibull fit needs at least " + std::to_string(options.min_samples) +
                    " values, got " + std::to_string(values.size()));
  }
  if (*std::min_element(values.begin(), values.end()) < 1) {
    throw Error(ErrorCode::kDomain, "Weibull fit values must be >= 1");
  }
  const Histogram h = MakeHistogram(values);

  WeibullParams grid_best;
  double grid_ll = -kInf;
  for (int i = 1; i <= 99; ++i) {
    for (int j = 0; j <= 56; ++j) {
      const WeibullParams params{0.01 * i, 0.2 + 0.05 * j};
      const double ll = HistogramLogLikelihood(h, params);
      if (ll > grid_ll) {
        grid_ll = ll;
        grid_best = params;
      }
    }
  }

  WeibullParams refined = Refine(h, grid_best, options.relative_tolerance);
  double ll = HistogramLogLikelihood(h, refined);
  if (!refined.IsValid() || !std::isfinite(ll)) {
    throw Error(ErrorCode::kFitDiverged,
                "Weibull refinement left the parameter domain");
  }
  if (ll < grid_ll) {
    refined = grid_best;
    ll = grid_ll;
  }

  WeibullFit fit;
  fit.params = refined;
  fit.log_likelihood = ll;
  fit.n = values.size();
  const DistributionTable table = EmpiricalDistribution(values);
  for (std::size_t i = 0; i < table.support.size(); ++i) {
    const double model = DWeibullEval(table.support[i], refined).cmf;
    fit.ks_distance = std::max(fit.ks_distance, std::abs(table.cmf[i] - model));
  }
  return fit;
}

WeibullFit FitDiscreteWeibull(const DistanceSeries& series,
                              const WeibullFitOptions& options) {
  return FitDiscreteWeibull(std::span<const int64_t>(series.values), options);
}

std::string_view PlotKindName(PlotKind kind) {
  return kind == PlotKind::kEmpirical ? "empirical" : "fitted";
}

PlotSeries WeibullPlot(const DistributionTable& table,
                       const std::optional<WeibullParams>& params,
                       bool rescaled) {
  std::vector<PlotPoint> empirical;
  for (std::size_t i = 0; i < table.support.size(); ++i) {
    const double cmf = table.cmf[i];
    if (!(cmf < 1.0) || cmf <= 0.0 || table.support[i] < 1) continue;
    empirical.push_back({std::log(static_cast<double>(table.support[i])),
                         std::log(-std::log1p(-cmf)), PlotKind::kEmpirical});
  }
  if (empirical.size() < 2) {
    throw Error(ErrorCode::kDegenerateSupport,
                "Weibull plot needs two support points with F(k) < 1");
  }
  PlotSeries out;
  out.rescaled = rescaled;
  out.x_min = out.x_max = empirical.front().x;
  out.y_min = out.y_max = empirical.front().y;
  for (const auto& pt : empirical) {
    out.x_min = std::min(out.x_min, pt.x);
    out.x_max = std::max(out.x_max, pt.x);
    out.y_min = std::min(out.y_min, pt.y);
    out.y_max = std::max(out.y_max, pt.y);
  }
  if (!(out.x_max > out.x_min) || !(out.y_max > out.y_min)) {
    throw Error(ErrorCode::kDegenerateSupport, "Weibull plot has zero extent");
  }
  out.points = empirical;
  if (params) {
    if (!params->IsValid()) {
      throw Error(ErrorCode::kDomain, "invalid Weibull parameters for plot");
    }
    const double intercept = std::log(-std::log1p(-params->p));
    for (const auto& pt : empirical) {
      out.points.push_back(
          {pt.x, params->beta * pt.x + intercept, PlotKind::kFitted});
    }
  }
  if (rescaled) {
    const double dx = out.x_max - out.x_min;
    const double dy = out.y_max - out.y_min;
    for (auto& pt : out.points) {
      pt.x = (pt.x - out.x_min) / dx;
      pt.y = (pt.y - out.y_min) / dy;
    }
    if (params) ClipFittedToUnitSquare(out.points);
  }
  return out;
}

}  // namespace punctkit
