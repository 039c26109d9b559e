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

// Command line front end: `analyze` runs the full pipeline from a JSON
// config; the remaining subcommands expose one stage each.
//
// Exit codes: 0 success, 1 validation error (bad flags, config, inputs),
// 2 analysis error (a stage failed; partial output may still be written).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "punctkit/corpus.h"
#include "punctkit/error.h"
#include "punctkit/mfdfa.h"
#include "punctkit/pipeline.h"
#include "punctkit/report.h"
#include "punctkit/series.h"
#include "punctkit/tokenizer.h"
#include "punctkit/weibull.h"
#include "punctkit/zipf.h"

namespace punctkit {
namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitAnalysis = 2;

// Errors that describe bad inputs rather than a failed computation.
bool IsValidationCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
    case ErrorCode::kEncoding:
    case ErrorCode::kEmptyDocument:
    case ErrorCode::kParse:
    case ErrorCode::kEmptyLexicon:
    case ErrorCode::kScriptMismatch:
    case ErrorCode::kPolicy:
    case ErrorCode::kValidation:
      return true;
    default:
      return false;
  }
}

// Flags shared by every subcommand that starts from a text file.
struct TextInput {
  std::string path;
  std::string script;  // "", "cjk" or "latin"
  std::string lexicon;
  double cjk_threshold = kDefaultCjkThreshold;
};

void AddTextFlags(CLI::App* cmd, TextInput& in) {
  cmd->add_option("input", in.path, "UTF-8 text file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--script", in.script, "Force script class")
      ->check(CLI::IsMember({"cjk", "latin"}));
  cmd->add_option("--lexicon", in.lexicon, "Lexicon file (required for CJK text)");
  cmd->add_option("--cjk-threshold", in.cjk_threshold, "CJK fraction threshold")
      ->check(CLI::Range(0.0, 1.0));
}

TokenSequence Tokenize(const TextInput& in) {
  LoadOptions options;
  options.cjk_threshold = in.cjk_threshold;
  if (!in.script.empty()) options.forced_script = ParseScriptClass(in.script);
  const Document doc = LoadDocument(in.path, options);
  const PunctPolicy policy = PunctPolicy::DefaultFor(doc.script);
  if (doc.script == ScriptClass::kCjk) {
    if (in.lexicon.empty()) {
      throw Error(ErrorCode::kValidation, "--lexicon is required for CJK text");
    }
    return SegmentCjk(doc, LoadLexicon(in.lexicon), policy);
  }
  return TokenizeLatin(doc, policy);
}

struct SeriesFlags {
  std::string unit = "words";
  std::string scope = "all";
  std::size_t drop_largest = 0;
  std::string series_csv;  // read an exported series instead of a text file
};

void AddSeriesFlags(CLI::App* cmd, SeriesFlags& flags) {
  cmd->add_option("--unit", flags.unit, "words|chars")
      ->check(CLI::IsMember({"words", "chars", "characters"}));
  cmd->add_option("--scope", flags.scope, "all|terminal")
      ->check(CLI::IsMember({"all", "terminal"}));
  cmd->add_option("--drop-largest", flags.drop_largest, "Remove the N largest values");
}

std::vector<int64_t> ReadSeriesCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::vector<int64_t> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;  // header
    const auto comma = line.find(',');
    try {
      values.push_back(std::stoll(line.substr(comma == std::string::npos ? 0 : comma + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": bad value");
    }
  }
  return values;
}

DistanceSeries BuildSeries(const TextInput& in, const SeriesFlags& flags) {
  DistanceSeries series;
  if (!flags.series_csv.empty()) {
    series.values = ReadSeriesCsv(flags.series_csv);
    series.source_id = flags.series_csv;
  } else {
    const TokenSequence tokens = Tokenize(in);
    const bool newline = PunctPolicy::DefaultFor(tokens.script).newline_is_terminal;
    series = ExtractDistances(tokens, *ParseUnit(flags.unit), *ParseScope(flags.scope), newline);
  }
  if (flags.drop_largest > 0) series = TrimOutliers(series, flags.drop_largest);
  return series;
}

void WriteText(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << content;
}

ordered_json FitJson(const PowerLawFit& fit) {
  return {{"gamma", fit.gamma},
          {"intercept", fit.intercept},
          {"r_squared", fit.r_squared},
          {"fit_range", {fit.fit_range.lo, fit.fit_range.hi}}};
}

int Run(int argc, char** argv) {
  CLI::App app{"punctkit: punctuation statistics for literary texts"};
  app.set_version_flag("--version", std::string(ToolkitVersion()));
  app.require_subcommand(1);

  // analyze
  std::string config_path;
  std::string out_dir;
  std::string plots = "svg";
  unsigned threads = 0;
  auto* analyze = app.add_subcommand("analyze", "Run the full pipeline from a JSON config");
  analyze->add_option("--config", config_path, "Config file")->required();
  analyze->add_option("--out", out_dir, "Output directory (overrides config output_dir)");
  analyze->add_option("--plots", plots, "svg|csv|none")
      ->check(CLI::IsMember({"svg", "csv", "none"}));
  analyze->add_option("--threads", threads, "Worker threads (0 = hardware)");

  // tokenize
  TextInput tok_in;
  std::string tok_out;
  auto* tokenize = app.add_subcommand("tokenize", "Emit the token stream as JSON Lines");
  AddTextFlags(tokenize, tok_in);
  tokenize->add_option("--out", tok_out, "Output file (default stdout)");

  // series
  TextInput ser_in;
  SeriesFlags ser_flags;
  std::string ser_out;
  std::string ser_meta;
  auto* series_cmd = app.add_subcommand("series", "Emit a distance series as CSV");
  AddTextFlags(series_cmd, ser_in);
  AddSeriesFlags(series_cmd, ser_flags);
  series_cmd->add_option("--out", ser_out, "CSV output (default stdout)");
  series_cmd->add_option("--meta", ser_meta, "JSON sidecar output");

  // zipf
  TextInput zipf_in;
  bool include_punct = false;
  bool no_case_fold = false;
  std::vector<int64_t> rank_range;
  bool crossover = false;
  int min_segment = 10;
  std::string zipf_table;
  auto* zipf = app.add_subcommand("zipf", "Rank-frequency table and power-law fit");
  AddTextFlags(zipf, zipf_in);
  zipf->add_flag("--include-punct", include_punct, "Count punctuation marks as types");
  zipf->add_flag("--no-case-fold", no_case_fold, "Keep case distinctions");
  zipf->add_option("--range", rank_range, "Fit range LO HI (default automatic)")
      ->expected(2);
  zipf->add_flag("--crossover", crossover, "Also fit two regimes");
  zipf->add_option("--min-segment", min_segment, "Minimum ranks per regime");
  zipf->add_option("--table", zipf_table, "Write rank table CSV here");

  // weibull
  TextInput wb_in;
  SeriesFlags wb_flags;
  std::size_t min_samples = 30;
  std::string wb_plot;
  bool wb_rescaled = false;
  auto* weibull = app.add_subcommand("weibull", "Fit the discrete Weibull distribution");
  AddTextFlags(weibull, wb_in);
  weibull->get_option("input")->required(false);
  AddSeriesFlags(weibull, wb_flags);
  weibull->add_option("--series-csv", wb_flags.series_csv, "Read an exported series CSV");
  weibull->add_option("--min-samples", min_samples, "Minimum sample size");
  weibull->add_option("--plot", wb_plot, "Write Weibull plot points (CSV) here");
  weibull->add_flag("--rescaled", wb_rescaled, "Rescale the Weibull plot onto the unit square");

  // mfdfa
  TextInput mf_in;
  SeriesFlags mf_flags;
  MfdfaConfig mf_config;
  std::string scale_mode = "auto";
  std::vector<int64_t> scale_range;
  std::string mf_out;
  auto* mfdfa = app.add_subcommand("mfdfa", "Multifractal detrended fluctuation analysis");
  AddTextFlags(mfdfa, mf_in);
  mfdfa->get_option("input")->required(false);
  AddSeriesFlags(mfdfa, mf_flags);
  mfdfa->add_option("--series-csv", mf_flags.series_csv, "Read an exported series CSV");
  mfdfa->add_option("--q-min", mf_config.q_min, "Smallest q");
  mfdfa->add_option("--q-max", mf_config.q_max, "Largest q");
  mfdfa->add_option("--q-step", mf_config.q_step, "q grid step");
  mfdfa->add_option("--detrend-order", mf_config.detrend_order, "Polynomial order m")
      ->check(CLI::Range(1, 4));
  mfdfa->add_option("--min-scale", mf_config.min_scale, "Smallest scale");
  mfdfa->add_option("--scale-count", mf_config.scale_count, "Number of log-spaced scales");
  mfdfa->add_option("--scale-mode", scale_mode, "auto|two_ranges|manual")
      ->check(CLI::IsMember({"auto", "two_ranges", "manual"}));
  mfdfa->add_option("--scale-range", scale_range, "Manual scale range LO HI")->expected(2);
  mfdfa->add_option("--out-dir", mf_out, "Write fq/hq/spectrum CSV files here");

  // plot
  std::string report_path;
  std::string plot_format = "svg";
  std::string plot_out;
  auto* plot = app.add_subcommand("plot", "Render figures from a report.json");
  plot->add_option("--report", report_path, "report.json from analyze")->required();
  plot->add_option("--format", plot_format, "svg|csv")->check(CLI::IsMember({"svg", "csv"}));
  plot->add_option("--out", plot_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*analyze) {
      AnalysisConfig config = LoadConfig(config_path);
      if (out_dir.empty() && config.output_dir.empty()) {
        throw Error(ErrorCode::kValidation, "no output directory (use --out or output_dir)");
      }
      // --out only redirects files; the recorded config stays as written.
      const std::filesystem::path dir =
          out_dir.empty() ? config.Resolve(config.output_dir) : std::filesystem::path(out_dir);
      config.threads = threads;
      const ReportBundle bundle = RunPipeline(config);
      const auto written = WriteReport(bundle, dir);
      std::size_t plot_files = 0;
      if (plots != "none") {
        try {
          plot_files = EmitPlots(bundle, plots == "svg" ? PlotFormat::kSvg : PlotFormat::kCsv,
                                 dir).size();
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kEmptyInput) throw;
        }
      }
      std::cerr << "wrote " << written.size() << " report files and " << plot_files
                << " plot files to " << dir.string() << "\n";
      for (const auto& doc : bundle.documents) {
        for (const auto& err : doc.errors) {
          std::cerr << doc.id << " [" << err.stage << "] " << err.code << ": " << err.message
                    << "\n";
        }
        for (const auto& s : doc.series) {
          for (const auto& err : s.errors) {
            std::cerr << doc.id << " " << err.series << " [" << err.stage << "] " << err.code
                      << ": " << err.message << "\n";
          }
        }
      }
      return bundle.ErrorCount() == 0 ? kExitOk : kExitAnalysis;
    }
    if (*tokenize) {
      WriteText(tok_out, TokensToJsonLines(Tokenize(tok_in)));
      return kExitOk;
    }
    if (*series_cmd) {
      const DistanceSeries series = BuildSeries(ser_in, ser_flags);
      WriteText(ser_out, SeriesToCsv(series));
      if (!ser_meta.empty()) WriteText(ser_meta, SeriesMetadataJson(series));
      return kExitOk;
    }
    if (*zipf) {
      const RankTable table = RankFrequency(Tokenize(zipf_in), include_punct, !no_case_fold);
      std::optional<RankRange> range;
      if (!rank_range.empty()) range = RankRange{rank_range[0], rank_range[1]};
      ordered_json out;
      out["types"] = table.entries.size();
      out["total_tokens"] = table.total_tokens;
      out["include_punct"] = table.include_punct;
      out["fit"] = FitJson(FitPowerLaw(table, range));
      if (crossover) {
        const CrossoverFit c = DetectCrossover(table, min_segment);
        out["crossover"] = {{"breakpoint", c.breakpoint},
                            {"fit_low", FitJson(c.fit_low)},
                            {"fit_high", FitJson(c.fit_high)},
                            {"single_rss", c.single_rss},
                            {"two_rss", c.two_rss},
                            {"improvement", c.improvement}};
      }
      if (!zipf_table.empty()) WriteText(zipf_table, RankTableToCsv(table));
      std::cout << out.dump(2) << "\n";
      return kExitOk;
    }
    if (*weibull) {
      if (wb_in.path.empty() && wb_flags.series_csv.empty()) {
        throw Error(ErrorCode::kValidation, "give an input text or --series-csv");
      }
      const DistanceSeries series = BuildSeries(wb_in, wb_flags);
      WeibullFitOptions options;
      options.min_samples = min_samples;
      const WeibullFit fit = FitDiscreteWeibull(series, options);
      ordered_json out = {{"p", fit.params.p},
                          {"beta", fit.params.beta},
                          {"log_likelihood", fit.log_likelihood},
                          {"ks_distance", fit.ks_distance},
                          {"n", fit.n}};
      if (!wb_plot.empty()) {
        WriteText(wb_plot, PlotSeriesToCsv(WeibullPlot(EmpiricalDistribution(series),
                                                       fit.params, wb_rescaled)));
      }
      std::cout << out.dump(2) << "\n";
      return kExitOk;
    }
    if (*mfdfa) {
      if (mf_in.path.empty() && mf_flags.series_csv.empty()) {
        throw Error(ErrorCode::kValidation, "give an input text or --series-csv");
      }
      if (scale_mode == "two_ranges") {
        mf_config.mode = ScaleMode::TwoRanges();
      } else if (scale_mode == "manual" || !scale_range.empty()) {
        if (scale_range.size() != 2) {
          throw Error(ErrorCode::kValidation, "manual scale mode needs --scale-range LO HI");
        }
        mf_config.mode = ScaleMode::Manual(scale_range[0], scale_range[1]);
      }
      const DistanceSeries series = BuildSeries(mf_in, mf_flags);
      const MfdfaResult result = RunMfdfa(series, mf_config.ToOptions());
      ordered_json out;
      out["n"] = result.matrix.n;
      out["detrend_order"] = result.matrix.detrend_order;
      ordered_json ranges = ordered_json::array();
      for (std::size_t r = 0; r < result.ranges.size(); ++r) {
        const auto& h = result.hurst[r];
        double h2 = 0.0;
        double best = 1e300;
        for (std::size_t i = 0; i < h.qs.size(); ++i) {
          if (std::abs(h.qs[i] - 2.0) < best) {
            best = std::abs(h.qs[i] - 2.0);
            h2 = h.h[i];
          }
        }
        ranges.push_back({{"scale_range", {result.ranges[r].lo, result.ranges[r].hi}},
                          {"hurst", h2},
                          {"delta_alpha", result.spectra[r].delta_alpha},
                          {"label", DeltaAlphaLabel(result.spectra[r].delta_alpha)}});
      }
      out["ranges"] = ranges;
      out["warnings"] = result.warnings;
      if (!mf_out.empty()) {
        std::filesystem::create_directories(mf_out);
        const std::filesystem::path dir(mf_out);
        WriteText((dir / "fq.csv").string(), FluctuationMatrixToCsv(result.matrix));
        WriteText((dir / "hq.csv").string(), HurstToCsv(result));
        WriteText((dir / "spectrum.csv").string(), SpectrumToCsv(result));
      }
      std::cout << out.dump(2) << "\n";
      return kExitOk;
    }
    if (*plot) {
      std::ifstream in(report_path, std::ios::binary);
      if (!in) throw Error(ErrorCode::kIo, "cannot read " + report_path);
      std::stringstream buffer;
      buffer << in.rdbuf();
      const ReportBundle bundle = BundleFromJson(buffer.str());
      const auto files = EmitPlots(
          bundle, plot_format == "svg" ? PlotFormat::kSvg : PlotFormat::kCsv, plot_out);
      for (const auto& f : files) std::cout << f.string() << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "punctkit: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return IsValidationCode(e.code()) ? kExitValidation : kExitAnalysis;
  } catch (const std::exception& e) {
    std::cerr << "punctkit: " << e.what() << "\n";
    return kExitAnalysis;
  }
  return kExitOk;
}

}  // namespace
}  // namespace punctkit

int main(int argc, char** argv) { return punctkit::Run(argc, argv); }
