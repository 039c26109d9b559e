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

#include "svg_plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

namespace punctkit::internal {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kLeft = 80;
constexpr double kRight = 180;
constexpr double kTop = 40;
constexpr double kBottom = 60;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::optional<double> Transform(double v, bool log_axis) {
  if (!std::isfinite(v)) return std::nullopt;
  if (log_axis) {
    if (v <= 0) return std::nullopt;
    return std::log10(v);
  }
  return v;
}

// Tick positions in transformed coordinates, with their labels.
std::vector<std::pair<double, std::string>> Ticks(double lo, double hi,
                                                  bool log_axis) {
  std::vector<std::pair<double, std::string>> ticks;
  if (log_axis) {
    for (double d = std::ceil(lo); d <= hi + 1e-9; d += 1.0) {
      ticks.emplace_back(d, Label(std::pow(10.0, d)));
    }
    if (ticks.size() >= 2) return ticks;
    ticks.clear();
  }
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  double step = magnitude;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * magnitude >= raw) {
      step = m * magnitude;
      break;
    }
  }
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
    const double shown = log_axis ? std::pow(10.0, t) : t;
    ticks.emplace_back(t, Label(std::abs(shown) < 1e-12 * step ? 0.0 : shown));
  }
  return ticks;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)) {}

void SvgPlot::AddSeries(std::string name,
                        std::vector<std::pair<double, double>> points,
                        SvgStyle style, int color) {
  series_.push_back({std::move(name), std::move(points), style, color});
}

std::string SvgPlot::Render() const {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  std::vector<std::vector<std::pair<double, double>>> mapped;
  for (const auto& s : series_) {
    auto& pts = mapped.emplace_back();
    for (const auto& [x, y] : s.points) {
      auto tx = Transform(x, log_x_);
      auto ty = Transform(y, log_y_);
      if (!tx || !ty) continue;
      pts.emplace_back(*tx, *ty);
      x_lo = std::min(x_lo, *tx);
      x_hi = std::max(x_hi, *tx);
      y_lo = std::min(y_lo, *ty);
      y_hi = std::max(y_hi, *ty);
    }
  }
  if (!(x_lo <= x_hi)) {
    x_lo = 0;
    x_hi = 1;
    y_lo = 0;
    y_hi = 1;
  }
  auto pad = [](double& lo, double& hi) {
    double span = hi - lo;
    if (span <= 0) span = std::max(std::abs(lo), 1.0);
    lo -= 0.05 * span;
    hi += 0.05 * span;
  };
  pad(x_lo, x_hi);
  pad(y_lo, y_hi);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Num(kWidth) +
         "\" height=\"" + Num(kHeight) + "\" viewBox=\"0 0 " + Num(kWidth) + " " +
         Num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + Num(kLeft + plot_w / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
         Escape(title_) + "</text>\n";
  svg += "<rect x=\"" + Num(kLeft) + "\" y=\"" + Num(kTop) + "\" width=\"" + Num(plot_w) +
         "\" height=\"" + Num(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (const auto& [t, label] : Ticks(x_lo, x_hi, log_x_)) {
    const double x = px(t);
    svg += "<line x1=\"" + Num(x) + "\" y1=\"" + Num(kTop + plot_h) + "\" x2=\"" + Num(x) +
           "\" y2=\"" + Num(kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + Num(x) + "\" y=\"" + Num(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + label + "</text>\n";
  }
  for (const auto& [t, label] : Ticks(y_lo, y_hi, log_y_)) {
    const double y = py(t);
    svg += "<line x1=\"" + Num(kLeft - 5) + "\" y1=\"" + Num(y) + "\" x2=\"" + Num(kLeft) +
           "\" y2=\"" + Num(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + Num(kLeft - 8) + "\" y=\"" + Num(y + 4) +
           "\" text-anchor=\"end\">" + label + "</text>\n";
  }
  svg += "<text x=\"" + Num(kLeft + plot_w / 2) + "\" y=\"" + Num(kHeight - 15) +
         "\" text-anchor=\"middle\">" + Escape(x_label_) + "</text>\n";
  svg += "<text transform=\"translate(20," + Num(kTop + plot_h / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + Escape(y_label_) + "</text>\n";

  for (std::size_t i = 0; i < series_.size(); ++i) {
    const auto& s = series_[i];
    const auto& pts = mapped[i];
    const char* color = kPalette[static_cast<std::size_t>(s.color) % std::size(kPalette)];
    if (s.style == SvgStyle::kMarkers) {
      for (const auto& [x, y] : pts) {
        svg += "<circle cx=\"" + Num(px(x)) + "\" cy=\"" + Num(py(y)) +
               "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
      }
    } else if (pts.size() >= 2) {
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\"";
      if (s.style == SvgStyle::kDashedLine) svg += " stroke-dasharray=\"6,4\"";
      svg += " points=\"";
      for (const auto& [x, y] : pts) svg += Num(px(x)) + "," + Num(py(y)) + " ";
      svg += "\"/>\n";
    }
    const double ly = kTop + 14 + 18 * static_cast<double>(i);
    const double lx = kLeft + plot_w + 12;
    if (s.style == SvgStyle::kMarkers) {
      svg += "<circle cx=\"" + Num(lx + 10) + "\" cy=\"" + Num(ly - 4) + "\" r=\"3\" fill=\"" +
             color + "\"/>\n";
    } else {
      svg += "<line x1=\"" + Num(lx) + "\" y1=\"" + Num(ly - 4) + "\" x2=\"" + Num(lx + 20) +
             "\" y2=\"" + Num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"1.5\"" +
             (s.style == SvgStyle::kDashedLine ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
    }
    svg += "<text x=\"" + Num(lx + 26) + "\" y=\"" + Num(ly) + "\">" + Escape(s.name) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace punctkit::internal
