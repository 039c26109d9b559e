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

// Minimal static SVG line/scatter charts for report figures.

#ifndef PUNCTKIT_SRC_SVG_PLOT_H_
#define PUNCTKIT_SRC_SVG_PLOT_H_

#include <string>
#include <utility>
#include <vector>

namespace punctkit::internal {

enum class SvgStyle { kMarkers, kLine, kDashedLine };

class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label);

  void set_log_x(bool log_x) { log_x_ = log_x; }
  void set_log_y(bool log_y) { log_y_ = log_y; }

  // Series sharing a color index are drawn in the same color.
  void AddSeries(std::string name, std::vector<std::pair<double, double>> points,
                 SvgStyle style, int color);

  // Points that are non-finite, or non-positive on a log axis, are skipped.
  std::string Render() const;

 private:
  struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
    SvgStyle style;
    int color;
  };

  std::string title_;
  std::string x_label_;
  std::string y_label_;
  bool log_x_ = false;
  bool log_y_ = false;
  std::vector<Series> series_;
};

}  // namespace punctkit::internal

#endif  // PUNCTKIT_SRC_SVG_PLOT_H_
