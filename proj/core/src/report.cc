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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>

#include "csv.h"
#include "json.hpp"
#include "punctkit/error.h"
#include "svg_plot.h"

namespace punctkit {

using internal::AppendCsvRow;
using internal::FormatDouble;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kParse, "malformed report: " + what);
}

double ReadDouble(const ordered_json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) Malformed("expected a number");
  return j.get<double>();
}

std::vector<double> ReadDoubles(const ordered_json& j) {
  if (!j.is_array()) Malformed("expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(ReadDouble(v));
  return out;
}

ordered_json FitToJson(const PowerLawFit& fit) {
  return {{"gamma", fit.gamma},
          {"intercept", fit.intercept},
          {"r_squared", fit.r_squared},
          {"fit_range", {fit.fit_range.lo, fit.fit_range.hi}}};
}

PowerLawFit FitFromJson(const ordered_json& j) {
  PowerLawFit fit;
  fit.gamma = ReadDouble(j.at("gamma"));
  fit.intercept = ReadDouble(j.at("intercept"));
  fit.r_squared = ReadDouble(j.at("r_squared"));
  fit.fit_range = {j.at("fit_range").at(0).get<int64_t>(),
                   j.at("fit_range").at(1).get<int64_t>()};
  return fit;
}

ordered_json ErrorsToJson(const std::vector<StageError>& errors) {
  ordered_json out = ordered_json::array();
  for (const auto& e : errors) {
    out.push_back({{"stage", e.stage}, {"series", e.series}, {"code", e.code},
                   {"message", e.message}});
  }
  return out;
}

std::vector<StageError> ErrorsFromJson(const ordered_json& j) {
  std::vector<StageError> out;
  for (const auto& e : j) {
    out.push_back({e.at("stage").get<std::string>(), e.at("series").get<std::string>(),
                   e.at("code").get<std::string>(), e.at("message").get<std::string>()});
  }
  return out;
}

ordered_json MfdfaToJson(const MfdfaResult& r) {
  ordered_json j;
  j["detrend_order"] = r.matrix.detrend_order;
  j["n"] = r.matrix.n;
  j["scales"] = r.matrix.scales;
  j["qs"] = r.matrix.qs;
  ordered_json fq = ordered_json::array();
  for (std::size_t si = 0; si < r.matrix.scales.size(); ++si) {
    ordered_json row = ordered_json::array();
    for (std::size_t qi = 0; qi < r.matrix.qs.size(); ++qi) row.push_back(r.matrix.at(si, qi));
    fq.push_back(row);
  }
  j["fq"] = fq;
  ordered_json ranges = ordered_json::array();
  for (const auto& range : r.ranges) ranges.push_back({range.lo, range.hi});
  j["ranges"] = ranges;
  ordered_json hurst = ordered_json::array();
  for (const auto& h : r.hurst) {
    hurst.push_back({{"range", {h.range.lo, h.range.hi}},
                     {"h", h.h},
                     {"stderr", h.stderr_h}});
  }
  j["hurst"] = hurst;
  ordered_json spectra = ordered_json::array();
  for (const auto& s : r.spectra) {
    std::vector<int> flags(s.nonphysical.begin(), s.nonphysical.end());
    spectra.push_back({{"alpha", s.alpha},
                       {"f", s.f},
                       {"nonphysical", flags},
                       {"delta_alpha", s.delta_alpha},
                       {"label", DeltaAlphaLabel(s.delta_alpha)}});
  }
  j["spectra"] = spectra;
  j["warnings"] = r.warnings;
  return j;
}

MfdfaResult MfdfaFromJson(const ordered_json& j) {
  MfdfaResult r;
  r.matrix.detrend_order = j.at("detrend_order").get<int>();
  r.matrix.n = j.at("n").get<std::size_t>();
  r.matrix.scales = j.at("scales").get<std::vector<int64_t>>();
  r.matrix.qs = ReadDoubles(j.at("qs"));
  for (const auto& row : j.at("fq")) {
    for (double v : ReadDoubles(row)) r.matrix.values.push_back(v);
  }
  if (r.matrix.values.size() != r.matrix.scales.size() * r.matrix.qs.size()) {
    Malformed("fq shape does not match scales x qs");
  }
  for (const auto& range : j.at("ranges")) {
    r.ranges.push_back({range.at(0).get<int64_t>(), range.at(1).get<int64_t>()});
  }
  for (const auto& h : j.at("hurst")) {
    HurstFunction hf;
    hf.qs = r.matrix.qs;
    hf.range = {h.at("range").at(0).get<int64_t>(), h.at("range").at(1).get<int64_t>()};
    hf.h = ReadDoubles(h.at("h"));
    hf.stderr_h = ReadDoubles(h.at("stderr"));
    r.hurst.push_back(std::move(hf));
  }
  for (const auto& s : j.at("spectra")) {
    Spectrum sp;
    sp.qs = r.matrix.qs;
    sp.alpha = ReadDoubles(s.at("alpha"));
    sp.f = ReadDoubles(s.at("f"));
    for (const auto& flag : s.at("nonphysical")) sp.nonphysical.push_back(flag.get<int>() != 0);
    sp.delta_alpha = ReadDouble(s.at("delta_alpha"));
    r.spectra.push_back(std::move(sp));
  }
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

ordered_json SeriesToJson(const SeriesResult& s) {
  ordered_json j;
  j["unit"] = UnitName(s.series.unit);
  j["scope"] = ScopeName(s.series.scope);
  j["n"] = s.series.values.size();
  j["values"] = s.series.values;
  ordered_json outliers = ordered_json::array();
  for (const auto& o : s.series.outliers_removed) outliers.push_back({o.index, o.value});
  j["outliers_removed"] = outliers;
  j["zero_gaps_skipped"] = s.series.zero_gaps_skipped;
  j["trailing_units"] = s.series.trailing_units;
  if (s.distribution) {
    j["distribution"] = {{"n", s.distribution->n},
                         {"support", s.distribution->support},
                         {"pmf", s.distribution->pmf},
                         {"cmf", s.distribution->cmf}};
  } else {
    j["distribution"] = nullptr;
  }
  if (s.weibull) {
    j["weibull"] = {{"p", s.weibull->params.p},
                    {"beta", s.weibull->params.beta},
                    {"log_likelihood", s.weibull->log_likelihood},
                    {"ks_distance", s.weibull->ks_distance},
                    {"n", s.weibull->n}};
  } else {
    j["weibull"] = nullptr;
  }
  j["mfdfa"] = s.mfdfa ? MfdfaToJson(*s.mfdfa) : ordered_json(nullptr);
  j["errors"] = ErrorsToJson(s.errors);
  return j;
}

SeriesResult SeriesFromJson(const ordered_json& j, const std::string& doc_id) {
  SeriesResult s;
  auto unit = ParseUnit(j.at("unit").get<std::string>());
  auto scope = ParseScope(j.at("scope").get<std::string>());
  if (!unit || !scope) Malformed("unknown unit or scope");
  s.series.unit = *unit;
  s.series.scope = *scope;
  s.series.source_id = doc_id;
  s.series.values = j.at("values").get<std::vector<int64_t>>();
  for (const auto& o : j.at("outliers_removed")) {
    s.series.outliers_removed.push_back({o.at(0).get<std::size_t>(), o.at(1).get<int64_t>()});
  }
  s.series.zero_gaps_skipped = j.at("zero_gaps_skipped").get<std::size_t>();
  s.series.trailing_units = j.at("trailing_units").get<int64_t>();
  if (!j.at("distribution").is_null()) {
    const auto& d = j["distribution"];
    DistributionTable t;
    t.n = d.at("n").get<std::size_t>();
    t.support = d.at("support").get<std::vector<int64_t>>();
    t.pmf = ReadDoubles(d.at("pmf"));
    t.cmf = ReadDoubles(d.at("cmf"));
    s.distribution = std::move(t);
  }
  if (!j.at("weibull").is_null()) {
    const auto& w = j["weibull"];
    WeibullFit fit;
    fit.params = {ReadDouble(w.at("p")), ReadDouble(w.at("beta"))};
    fit.log_likelihood = ReadDouble(w.at("log_likelihood"));
    fit.ks_distance = ReadDouble(w.at("ks_distance"));
    fit.n = w.at("n").get<std::size_t>();
    s.weibull = fit;
  }
  if (!j.at("mfdfa").is_null()) s.mfdfa = MfdfaFromJson(j["mfdfa"]);
  s.errors = ErrorsFromJson(j.at("errors"));
  return s;
}

std::string SafeName(const std::string& id) {
  std::string out;
  for (unsigned char c : id) {
    const bool bad = c < 0x20 || c == '/' || c == '\\' || c == ':' || c == '*' ||
                     c == '?' || c == '"' || c == '<' || c == '>' || c == '|';
    out += bad ? '_' : static_cast<char>(c);
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

std::string SeriesFileStem(const SeriesResult& s) {
  return std::string(UnitName(s.series.unit)) + "_" + std::string(ScopeName(s.series.scope));
}

void WriteFile(const std::filesystem::path& path, const std::string& content,
               std::vector<std::filesystem::path>& written) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
  written.push_back(path);
}

// Renderer-neutral figure: drawn as SVG or dumped as `series,x,y,kind` CSV.
struct Curve {
  std::string name;
  std::string kind;
  internal::SvgStyle style;
  int color;
  std::vector<std::pair<double, double>> points;
};

struct Figure {
  std::string basename;
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Curve> curves;
};

std::string RenderFigure(const Figure& fig, PlotFormat format) {
  if (format == PlotFormat::kCsv) {
    std::string out = "series,x,y,kind\n";
    for (const auto& c : fig.curves) {
      for (const auto& [x, y] : c.points) {
        AppendCsvRow(out, {c.name, FormatDouble(x), FormatDouble(y), c.kind});
      }
    }
    return out;
  }
  internal::SvgPlot plot(fig.title, fig.x_label, fig.y_label);
  plot.set_log_x(fig.log_x);
  plot.set_log_y(fig.log_y);
  for (const auto& c : fig.curves) plot.AddSeries(c.name, c.points, c.style, c.color);
  return plot.Render();
}

std::vector<Figure> DocumentFigures(const DocumentResult& doc) {
  using internal::SvgStyle;
  std::vector<Figure> figures;

  if (doc.rank_table) {
    Figure fig{"rank_frequency", doc.id + ": rank-frequency", "rank R", "P(R)", true, true, {}};
    Curve data{doc.rank_table->include_punct ? "words + punctuation" : "words", "empirical",
               SvgStyle::kMarkers, 0, {}};
    for (const auto& e : doc.rank_table->entries) data.points.emplace_back(e.rank, e.prob);
    fig.curves.push_back(std::move(data));
    auto add_fit = [&](const PowerLawFit& fit, const std::string& name, int color) {
      Curve line{name, "fitted", SvgStyle::kLine, color, {}};
      for (int64_t r : {fit.fit_range.lo, fit.fit_range.hi}) {
        line.points.emplace_back(
            r, std::exp(fit.intercept) * std::pow(static_cast<double>(r), -fit.gamma));
      }
      fig.curves.push_back(std::move(line));
    };
    if (doc.zipf_fit) add_fit(*doc.zipf_fit, "gamma=" + FormatDouble(std::round(doc.zipf_fit->gamma * 1000) / 1000), 1);
    if (doc.crossover) {
      add_fit(doc.crossover->fit_low,
              "low gamma=" + FormatDouble(std::round(doc.crossover->fit_low.gamma * 1000) / 1000), 2);
      add_fit(doc.crossover->fit_high,
              "high gamma=" + FormatDouble(std::round(doc.crossover->fit_high.gamma * 1000) / 1000), 3);
    }
    figures.push_back(std::move(fig));
  }

  Figure pmf{"weibull_pmf", doc.id + ": distance PMF", "k", "P(k)", false, true, {}};
  Figure hazard{"hazard", doc.id + ": hazard function", "k", "h(k)", false, false, {}};
  Figure wplot{"weibull_plot", doc.id + ": rescaled Weibull plot", "x'", "y'", false, false, {}};
  int color = 0;
  for (const auto& s : doc.series) {
    if (!s.weibull || !s.distribution) continue;
    const auto& table = *s.distribution;
    const auto& params = s.weibull->params;
    const std::string key = s.Key();
    Curve emp{key, "empirical", SvgStyle::kMarkers, color, {}};
    Curve fit{key + " fit", "fitted", SvgStyle::kLine, color, {}};
    Curve emp_h{key, "empirical", SvgStyle::kMarkers, color, {}};
    Curve fit_h{key + " fit", "fitted", SvgStyle::kLine, color, {}};
    double survival = 1.0;
    for (std::size_t i = 0; i < table.support.size(); ++i) {
      emp.points.emplace_back(table.support[i], table.pmf[i]);
      if (survival > 0.0 && (i == 0 || table.support[i - 1] == table.support[i] - 1)) {
        emp_h.points.emplace_back(table.support[i], table.pmf[i] / survival);
      }
      survival = 1.0 - table.cmf[i];
    }
    for (int64_t k = 1; k <= table.support.back(); ++k) {
      const WeibullPoint pt = DWeibullEval(k, params);
      fit.points.emplace_back(k, pt.pmf);
      fit_h.points.emplace_back(k, pt.hazard);
    }
    pmf.curves.push_back(std::move(emp));
    pmf.curves.push_back(std::move(fit));
    hazard.curves.push_back(std::move(emp_h));
    hazard.curves.push_back(std::move(fit_h));
    try {
      const PlotSeries ps = WeibullPlot(table, params, true);
      Curve e{key, "empirical", SvgStyle::kMarkers, color, {}};
      Curve f{key + " fit", "fitted", SvgStyle::kDashedLine, color, {}};
      for (const auto& pt : ps.points) {
        (pt.kind == PlotKind::kEmpirical ? e : f).points.emplace_back(pt.x, pt.y);
      }
      wplot.curves.push_back(std::move(e));
      wplot.curves.push_back(std::move(f));
    } catch (const Error&) {
      // Degenerate support: nothing to draw for this series.
    }
    ++color;
  }
  if (!pmf.curves.empty()) {
    figures.push_back(std::move(pmf));
    figures.push_back(std::move(hazard));
    if (!wplot.curves.empty()) figures.push_back(std::move(wplot));
  }

  Figure fluct{"fluctuation", doc.id + ": fluctuation functions", "s", "F_q(s)", true, true, {}};
  Figure spec{"spectrum", doc.id + ": singularity spectrum", "alpha", "f(alpha)", false, false, {}};
  color = 0;
  for (const auto& s : doc.series) {
    if (!s.mfdfa) continue;
    const auto& m = s.mfdfa->matrix;
    const std::string key = s.Key();
    std::vector<std::size_t> picks;
    for (double target : {m.qs.front(), 0.0, 2.0, m.qs.back()}) {
      std::size_t best = 0;
      for (std::size_t qi = 1; qi < m.qs.size(); ++qi) {
        if (std::abs(m.qs[qi] - target) < std::abs(m.qs[best] - target)) best = qi;
      }
      if (std::find(picks.begin(), picks.end(), best) == picks.end()) picks.push_back(best);
    }
    for (std::size_t qi : picks) {
      Curve c{key + " q=" + FormatDouble(m.qs[qi]), "empirical", SvgStyle::kLine, color, {}};
      for (std::size_t si = 0; si < m.scales.size(); ++si) {
        c.points.emplace_back(m.scales[si], m.at(si, qi));
      }
      fluct.curves.push_back(std::move(c));
      ++color;
    }
    for (std::size_t r = 0; r < s.mfdfa->spectra.size(); ++r) {
      const auto& sp = s.mfdfa->spectra[r];
      const auto& range = s.mfdfa->ranges[r];
      const std::string name = key + " s=" + std::to_string(range.lo) + ".." +
                               std::to_string(range.hi);
      Curve good{name, "physical", SvgStyle::kLine, static_cast<int>(r) + color, {}};
      Curve bad{name + " (nonphysical)", "nonphysical", SvgStyle::kDashedLine,
                static_cast<int>(r) + color, {}};
      for (std::size_t i = 0; i < sp.alpha.size(); ++i) {
        (sp.nonphysical[i] ? bad : good).points.emplace_back(sp.alpha[i], sp.f[i]);
      }
      spec.curves.push_back(std::move(good));
      if (!bad.points.empty()) spec.curves.push_back(std::move(bad));
    }
  }
  if (!fluct.curves.empty()) {
    figures.push_back(std::move(fluct));
    figures.push_back(std::move(spec));
  }
  return figures;
}

}  // namespace

std::string BundleToJson(const ReportBundle& bundle) {
  ordered_json j;
  j["toolkit"] = "punctkit";
  j["version"] = bundle.provenance.toolkit_version;
  j["provenance"] = {
      {"config_hash", bundle.provenance.config_hash},
      {"config", bundle.provenance.config_json.empty()
                     ? ordered_json(nullptr)
                     : ordered_json::parse(bundle.provenance.config_json)},
      {"decisions", bundle.provenance.decisions_json.empty()
                        ? ordered_json(nullptr)
                        : ordered_json::parse(bundle.provenance.decisions_json)},
  };
  ordered_json docs = ordered_json::array();
  for (const auto& d : bundle.documents) {
    ordered_json doc;
    doc["id"] = d.id;
    doc["source_path"] = d.source_path;
    doc["script"] = ScriptClassName(d.script);
    doc["char_count"] = d.char_count;
    doc["token_count"] = d.token_count;
    if (d.rank_table) {
      ordered_json entries = ordered_json::array();
      for (const auto& e : d.rank_table->entries) {
        entries.push_back({e.rank, e.token, e.count, e.prob});
      }
      doc["rank_table"] = {{"include_punct", d.rank_table->include_punct},
                           {"total_tokens", d.rank_table->total_tokens},
                           {"types", d.rank_table->entries.size()},
                           {"entries", entries}};
    } else {
      doc["rank_table"] = nullptr;
    }
    doc["zipf_fit"] = d.zipf_fit ? FitToJson(*d.zipf_fit) : ordered_json(nullptr);
    if (d.crossover) {
      doc["crossover"] = {{"breakpoint", d.crossover->breakpoint},
                          {"fit_low", FitToJson(d.crossover->fit_low)},
                          {"fit_high", FitToJson(d.crossover->fit_high)},
                          {"single_rss", d.crossover->single_rss},
                          {"two_rss", d.crossover->two_rss},
                          {"improvement", d.crossover->improvement}};
    } else {
      doc["crossover"] = nullptr;
    }
    ordered_json series = ordered_json::array();
    for (const auto& s : d.series) series.push_back(SeriesToJson(s));
    doc["series"] = series;
    doc["errors"] = ErrorsToJson(d.errors);
    docs.push_back(doc);
  }
  j["documents"] = docs;
  j["error_count"] = bundle.ErrorCount();
  return j.dump(2) + "\n";
}

ReportBundle BundleFromJson(std::string_view text) {
  ReportBundle bundle;
  try {
    const ordered_json j = ordered_json::parse(text);
    bundle.provenance.toolkit_version = j.at("version").get<std::string>();
    const auto& prov = j.at("provenance");
    bundle.provenance.config_hash = prov.at("config_hash").get<std::string>();
    if (!prov.at("config").is_null()) bundle.provenance.config_json = prov["config"].dump();
    if (!prov.at("decisions").is_null()) {
      bundle.provenance.decisions_json = prov["decisions"].dump();
    }
    for (const auto& d : j.at("documents")) {
      DocumentResult doc;
      doc.id = d.at("id").get<std::string>();
      doc.source_path = d.at("source_path").get<std::string>();
      auto script = ParseScriptClass(d.at("script").get<std::string>());
      if (!script) Malformed("unknown script");
      doc.script = *script;
      doc.char_count = d.at("char_count").get<std::size_t>();
      doc.token_count = d.at("token_count").get<std::size_t>();
      if (!d.at("rank_table").is_null()) {
        const auto& rt = d["rank_table"];
        RankTable table;
        table.include_punct = rt.at("include_punct").get<bool>();
        table.total_tokens = rt.at("total_tokens").get<int64_t>();
        for (const auto& e : rt.at("entries")) {
          table.entries.push_back({e.at(0).get<int64_t>(), e.at(1).get<std::string>(),
                                   e.at(2).get<int64_t>(), ReadDouble(e.at(3))});
        }
        doc.rank_table = std::move(table);
      }
      if (!d.at("zipf_fit").is_null()) doc.zipf_fit = FitFromJson(d["zipf_fit"]);
      if (!d.at("crossover").is_null()) {
        const auto& c = d["crossover"];
        CrossoverFit fit;
        fit.breakpoint = c.at("breakpoint").get<int64_t>();
        fit.fit_low = FitFromJson(c.at("fit_low"));
        fit.fit_high = FitFromJson(c.at("fit_high"));
        fit.single_rss = ReadDouble(c.at("single_rss"));
        fit.two_rss = ReadDouble(c.at("two_rss"));
        fit.improvement = ReadDouble(c.at("improvement"));
        doc.crossover = fit;
      }
      for (const auto& s : d.at("series")) doc.series.push_back(SeriesFromJson(s, doc.id));
      doc.errors = ErrorsFromJson(d.at("errors"));
      bundle.documents.push_back(std::move(doc));
    }
  } catch (const nlohmann::json::exception& e) {
    Malformed(e.what());
  }
  return bundle;
}

std::string SeriesToCsv(const DistanceSeries& series) {
  std::string out = "index,value\n";
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    out += std::to_string(i) + "," + std::to_string(series.values[i]) + "\n";
  }
  return out;
}

std::string SeriesMetadataJson(const DistanceSeries& series) {
  ordered_json j;
  j["source_id"] = series.source_id;
  j["unit"] = UnitName(series.unit);
  j["scope"] = ScopeName(series.scope);
  j["n"] = series.values.size();
  ordered_json outliers = ordered_json::array();
  for (const auto& o : series.outliers_removed) {
    outliers.push_back({{"index", o.index}, {"value", o.value}});
  }
  j["outliers_removed"] = outliers;
  j["zero_gaps_skipped"] = series.zero_gaps_skipped;
  j["trailing_units"] = series.trailing_units;
  return j.dump(2) + "\n";
}

std::string RankTableToCsv(const RankTable& table) {
  std::string out = "rank,token,count,prob\n";
  for (const auto& e : table.entries) {
    AppendCsvRow(out, {std::to_string(e.rank), e.token, std::to_string(e.count),
                       FormatDouble(e.prob)});
  }
  return out;
}

std::string FluctuationMatrixToCsv(const FluctuationMatrix& matrix) {
  std::string out = "s,q,Fq\n";
  for (std::size_t si = 0; si < matrix.scales.size(); ++si) {
    for (std::size_t qi = 0; qi < matrix.qs.size(); ++qi) {
      AppendCsvRow(out, {std::to_string(matrix.scales[si]), FormatDouble(matrix.qs[qi]),
                         FormatDouble(matrix.at(si, qi))});
    }
  }
  return out;
}

std::string HurstToCsv(const MfdfaResult& result) {
  std::string out = "range,q,h,stderr\n";
  for (const auto& h : result.hurst) {
    const std::string range = std::to_string(h.range.lo) + "-" + std::to_string(h.range.hi);
    for (std::size_t i = 0; i < h.qs.size(); ++i) {
      AppendCsvRow(out, {range, FormatDouble(h.qs[i]), FormatDouble(h.h[i]),
                         FormatDouble(h.stderr_h[i])});
    }
  }
  return out;
}

std::string SpectrumToCsv(const MfdfaResult& result) {
  std::string out = "range,q,alpha,f,h_stderr,nonphysical\n";
  for (std::size_t r = 0; r < result.spectra.size(); ++r) {
    const auto& s = result.spectra[r];
    const auto& h = result.hurst[r];
    const std::string range = std::to_string(h.range.lo) + "-" + std::to_string(h.range.hi);
    for (std::size_t i = 0; i < s.qs.size(); ++i) {
      AppendCsvRow(out, {range, FormatDouble(s.qs[i]), FormatDouble(s.alpha[i]),
                         FormatDouble(s.f[i]), FormatDouble(h.stderr_h[i]),
                         s.nonphysical[i] ? "1" : "0"});
    }
  }
  return out;
}

std::string PlotSeriesToCsv(const PlotSeries& plot) {
  std::string out = "x,y,kind\n";
  for (const auto& p : plot.points) {
    AppendCsvRow(out, {FormatDouble(p.x), FormatDouble(p.y), std::string(PlotKindName(p.kind))});
  }
  return out;
}

std::vector<std::filesystem::path> WriteReport(const ReportBundle& bundle,
                                               const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> written;
  WriteFile(out_dir / "report.json", BundleToJson(bundle), written);
  for (const auto& doc : bundle.documents) {
    const auto dir = out_dir / SafeName(doc.id);
    if (doc.rank_table) WriteFile(dir / "rank_table.csv", RankTableToCsv(*doc.rank_table), written);
    for (const auto& s : doc.series) {
      const std::string stem = SeriesFileStem(s);
      WriteFile(dir / ("series_" + stem + ".csv"), SeriesToCsv(s.series), written);
      WriteFile(dir / ("series_" + stem + ".json"), SeriesMetadataJson(s.series), written);
      if (s.mfdfa) {
        WriteFile(dir / ("mfdfa_" + stem + "_fq.csv"), FluctuationMatrixToCsv(s.mfdfa->matrix),
                  written);
        WriteFile(dir / ("mfdfa_" + stem + "_hq.csv"), HurstToCsv(*s.mfdfa), written);
        WriteFile(dir / ("mfdfa_" + stem + "_spectrum.csv"), SpectrumToCsv(*s.mfdfa), written);
      }
    }
  }
  return written;
}

std::vector<std::filesystem::path> EmitPlots(const ReportBundle& bundle, PlotFormat format,
                                             const std::filesystem::path& out_dir) {
  std::vector<std::pair<std::filesystem::path, std::string>> pending;
  const char* ext = format == PlotFormat::kSvg ? ".svg" : ".csv";
  for (const auto& doc : bundle.documents) {
    for (const Figure& fig : DocumentFigures(doc)) {
      pending.emplace_back(out_dir / SafeName(doc.id) / (fig.basename + ext),
                           RenderFigure(fig, format));
    }
  }
  if (pending.empty()) {
    throw Error(ErrorCode::kEmptyInput, "report bundle has nothing to plot");
  }
  std::vector<std::filesystem::path> written;
  for (const auto& [path, content] : pending) WriteFile(path, content, written);
  return written;
}

}  // namespace punctkit
