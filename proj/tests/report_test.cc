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

#include "punctkit/report.h"

#include <gtest/gtest.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "punctkit/error.h"
#include "punctkit/pipeline.h"

namespace punctkit {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = PUNCTKIT_FIXTURE_DIR;

class ScratchDir {
 public:
  ScratchDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            ("punctkit_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string ReadAll(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string FirstLine(const fs::path& path) {
  const std::string text = ReadAll(path);
  return text.substr(0, text.find('\n'));
}

const ReportBundle& FixtureBundle() {
  static const ReportBundle bundle = [] {
    AnalysisConfig config = LoadConfig(kFixtures / "corpus.json");
    config.threads = 2;
    return RunPipeline(config);
  }();
  return bundle;
}

TEST(ReportJsonTest, RoundTripIsByteStable) {
  const std::string text = BundleToJson(FixtureBundle());
  const ReportBundle back = BundleFromJson(text);
  EXPECT_EQ(BundleToJson(back), text);
  ASSERT_EQ(back.documents.size(), 2u);
  EXPECT_EQ(back.provenance.config_hash, FixtureBundle().provenance.config_hash);
  EXPECT_EQ(back.ErrorCount(), FixtureBundle().ErrorCount());
  const auto& s = back.documents[1].series[0];
  ASSERT_TRUE(s.weibull.has_value());
  EXPECT_DOUBLE_EQ(s.weibull->params.p, FixtureBundle().documents[1].series[0].weibull->params.p);
}

TEST(ReportJsonTest, MalformedInputRejected) {
  try {
    BundleFromJson("{\"documents\": 3}");
    FAIL() << "expected error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

TEST(ReportFilesTest, WritesTablesWithHeaders) {
  ScratchDir dir;
  const auto written = WriteReport(FixtureBundle(), dir.path());
  EXPECT_TRUE(fs::exists(dir.path() / "report.json"));
  const fs::path en = dir.path() / "en_synthetic";
  EXPECT_EQ(FirstLine(en / "rank_table.csv"), "rank,token,count,prob");
  EXPECT_EQ(FirstLine(en / "series_words_all.csv"), "index,value");
  EXPECT_TRUE(fs::exists(en / "series_words_all.json"));
  EXPECT_EQ(FirstLine(en / "mfdfa_words_terminal_fq.csv"), "s,q,Fq");
  EXPECT_EQ(FirstLine(en / "mfdfa_words_terminal_hq.csv"), "range,q,h,stderr");
  EXPECT_EQ(FirstLine(en / "mfdfa_words_terminal_spectrum.csv"),
            "range,q,alpha,f,h_stderr,nonphysical");
  // The short Chinese series have no MFDFA output.
  EXPECT_FALSE(fs::exists(dir.path() / "zh_spring" / "mfdfa_words_all_fq.csv"));
  for (const auto& p : written) EXPECT_TRUE(fs::is_regular_file(p)) << p;
}

TEST(ReportFilesTest, SeriesCsvMatchesValues) {
  const auto& s = FixtureBundle().documents[1].series[0].series;
  std::istringstream in(SeriesToCsv(s));
  std::string line;
  std::getline(in, line);
  std::size_t i = 0;
  while (std::getline(in, line)) {
    ASSERT_LT(i, s.values.size());
    EXPECT_EQ(line, std::to_string(i) + "," + std::to_string(s.values[i]));
    ++i;
  }
  EXPECT_EQ(i, s.values.size());
}

TEST(ReportFilesTest, RankTableCsvEscapesPunctuation) {
  RankTable table;
  table.total_tokens = 3;
  table.entries = {{1, "\"", 2, 2.0 / 3}, {2, ",", 1, 1.0 / 3}};
  const std::string csv = RankTableToCsv(table);
  EXPECT_NE(csv.find("1,\"\"\"\",2,"), std::string::npos) << csv;
  EXPECT_NE(csv.find("2,\",\",1,"), std::string::npos) << csv;
}

TEST(PlotTest, EmitsExpectedFiguresInBothFormats) {
  for (PlotFormat format : {PlotFormat::kSvg, PlotFormat::kCsv}) {
    ScratchDir dir;
    const auto written = EmitPlots(FixtureBundle(), format, dir.path());
    const std::string ext = format == PlotFormat::kSvg ? ".svg" : ".csv";
    for (const char* doc : {"en_synthetic", "zh_spring"}) {
      for (const char* name : {"rank_frequency", "weibull_pmf", "hazard", "weibull_plot"}) {
        const fs::path p = dir.path() / doc / (std::string(name) + ext);
        ASSERT_TRUE(fs::exists(p)) << p;
        const std::string text = ReadAll(p);
        if (format == PlotFormat::kSvg) {
          EXPECT_NE(text.find("<svg"), std::string::npos);
          EXPECT_NE(text.find("</svg>"), std::string::npos);
        } else {
          EXPECT_EQ(text.substr(0, text.find('\n')), "series,x,y,kind");
        }
      }
    }
    EXPECT_TRUE(fs::exists(dir.path() / "en_synthetic" / ("fluctuation" + ext)));
    EXPECT_TRUE(fs::exists(dir.path() / "en_synthetic" / ("spectrum" + ext)));
    EXPECT_FALSE(fs::exists(dir.path() / "zh_spring" / ("spectrum" + ext)));
    EXPECT_FALSE(written.empty());
  }
}

TEST(PlotTest, RescaledWeibullPlotStaysInUnitSquare) {
  ScratchDir dir;
  EmitPlots(FixtureBundle(), PlotFormat::kCsv, dir.path());
  std::istringstream in(ReadAll(dir.path() / "en_synthetic" / "weibull_plot.csv"));
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    // series names may contain commas only inside quotes; x and y follow.
    const auto last = line.rfind(',');
    const auto mid = line.rfind(',', last - 1);
    const auto first = line.rfind(',', mid - 1);
    const double x = std::stod(line.substr(first + 1, mid - first - 1));
    const double y = std::stod(line.substr(mid + 1, last - mid - 1));
    EXPECT_GE(x, -1e-12);
    EXPECT_LE(x, 1 + 1e-12);
    EXPECT_GE(y, -1e-12);
    EXPECT_LE(y, 1 + 1e-12);
    ++rows;
  }
  EXPECT_GT(rows, 10);
}

TEST(PlotTest, EmptyBundleWritesNothing) {
  ScratchDir dir;
  ReportBundle empty;
  try {
    EmitPlots(empty, PlotFormat::kSvg, dir.path());
    FAIL() << "expected error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
  EXPECT_FALSE(fs::exists(dir.path()));
}

}  // namespace
}  // namespace punctkit
