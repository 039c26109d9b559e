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

// Report serialization and figure output.

#ifndef PUNCTKIT_REPORT_H_
#define PUNCTKIT_REPORT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "punctkit/pipeline.h"

namespace punctkit {

// Canonical report JSON: keys in fixed order, no timestamps, so equal bundles
// give byte-identical text.
std::string BundleToJson(const ReportBundle& bundle);
// Throws Error(kParse) for malformed reports.
ReportBundle BundleFromJson(std::string_view json);

// Writes report.json plus per-document CSV sidecars:
//   <id>/rank_table.csv              rank,token,count,prob
//   <id>/series_<unit>_<scope>.csv   index,value (+ .json metadata sidecar)
//   <id>/mfdfa_<unit>_<scope>_fq.csv s,q,Fq
//   <id>/mfdfa_<unit>_<scope>_hq.csv range,q,h,stderr
//   <id>/mfdfa_<unit>_<scope>_spectrum.csv range,q,alpha,f,h_stderr,nonphysical
// Returns the written paths. Throws kIo.
std::vector<std::filesystem::path> WriteReport(
    const ReportBundle& bundle, const std::filesystem::path& out_dir);

// CSV sidecar for one series: `index,value`.
std::string SeriesToCsv(const DistanceSeries& series);
// JSON sidecar with unit / scope / outlier metadata.
std::string SeriesMetadataJson(const DistanceSeries& series);
std::string RankTableToCsv(const RankTable& table);
std::string FluctuationMatrixToCsv(const FluctuationMatrix& matrix);
std::string HurstToCsv(const MfdfaResult& result);
std::string SpectrumToCsv(const MfdfaResult& result);
std::string PlotSeriesToCsv(const PlotSeries& plot);

enum class PlotFormat { kSvg, kCsv };

// One file per figure family per document, under <out_dir>/<document id>/:
// rank_frequency, weibull_pmf, hazard, weibull_plot, fluctuation, spectrum.
// Families without data are skipped. Throws kEmptyInput when nothing can be
// plotted and kIo on write failures.
std::vector<std::filesystem::path> EmitPlots(const ReportBundle& bundle,
                                             PlotFormat format,
                                             const std::filesystem::path& out_dir);

}  // namespace punctkit

#endif  // PUNCTKIT_REPORT_H_
