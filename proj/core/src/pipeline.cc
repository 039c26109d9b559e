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

#include "punctkit/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "punctkit/error.h"

namespace punctkit {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kValidation, message);
}

ordered_json SetToJson(const std::set<std::string>& marks) {
  return ordered_json(std::vector<std::string>(marks.begin(), marks.end()));
}

ordered_json PolicyOverrideToJson(const PolicyOverride& o) {
  ordered_json j = ordered_json::object();
  if (o.terminal_set) j["terminal"] = SetToJson(*o.terminal_set);
  if (o.nonterminal_set) j["nonterminal"] = SetToJson(*o.nonterminal_set);
  if (o.excluded_set) j["excluded"] = SetToJson(*o.excluded_set);
  if (o.newline_is_terminal) j["newline_is_terminal"] = *o.newline_is_terminal;
  return j;
}

ordered_json PolicyToJson(const PunctPolicy& p) {
  ordered_json j;
  j["terminal"] = SetToJson(p.terminal_set);
  j["nonterminal"] = SetToJson(p.nonterminal_set);
  j["excluded"] = SetToJson(p.excluded_set);
  j["newline_is_terminal"] = p.newline_is_terminal;
  return j;
}

ordered_json ScaleModeToJson(const ScaleMode& mode) {
  switch (mode.kind) {
    case ScaleMode::Kind::kAuto: return "auto";
    case ScaleMode::Kind::kTwoRanges: return "two_ranges";
    case ScaleMode::Kind::kManual: return ordered_json::array({mode.manual.lo, mode.manual.hi});
  }
  return "auto";
}

// Strict readers: every lookup names the offending key on failure.
void CheckKeys(const ordered_json& j, std::initializer_list<std::string_view> allowed,
               std::string_view where) {
  if (!j.is_object()) Invalid(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      Invalid("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
T Get(const ordered_json& j, std::string_view key, std::string_view where) {
  try {
    return j.at(std::string(key)).get<T>();
  } catch (const nlohmann::json::exception&) {
    Invalid("bad or missing '" + std::string(key) + "' in " + std::string(where));
  }
}

std::set<std::string> ReadMarkSet(const ordered_json& j, std::string_view key,
                                  std::string_view where) {
  auto marks = Get<std::vector<std::string>>(j, key, where);
  return {marks.begin(), marks.end()};
}

PolicyOverride PolicyOverrideFromJson(const ordered_json& j, std::string_view where) {
  CheckKeys(j, {"terminal", "nonterminal", "excluded", "newline_is_terminal"}, where);
  PolicyOverride o;
  if (j.contains("terminal")) o.terminal_set = ReadMarkSet(j, "terminal", where);
  if (j.contains("nonterminal")) o.nonterminal_set = ReadMarkSet(j, "nonterminal", where);
  if (j.contains("excluded")) o.excluded_set = ReadMarkSet(j, "excluded", where);
  if (j.contains("newline_is_terminal")) {
    o.newline_is_terminal = Get<bool>(j, "newline_is_terminal", where);
  }
  return o;
}

ScaleMode ScaleModeFromJson(const ordered_json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "auto") return ScaleMode::Auto();
    if (s == "two_ranges") return ScaleMode::TwoRanges();
  } else if (j.is_array() && j.size() == 2 && j[0].is_number_integer() &&
             j[1].is_number_integer()) {
    return ScaleMode::Manual(j[0].get<int64_t>(), j[1].get<int64_t>());
  }
  Invalid("mfdfa.scale_mode must be \"auto\", \"two_ranges\" or [lo, hi]");
}

std::string Fnv1a64Hex(std::string_view bytes) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string DecisionsJson(const AnalysisConfig& config) {
  ordered_json d;
  d["cjk_policy"] = PolicyToJson(config.PolicyFor(ScriptClass::kCjk));
  d["latin_policy"] = PolicyToJson(config.PolicyFor(ScriptClass::kLatin));
  d["cjk_threshold"] = config.cjk_threshold;
  d["segmentation"] =
      "unigram dynamic programming over lexicon words; unknown scalars as "
      "single-character words at log(0.5 / total lexicon frequency); ties: "
      "fewer tokens, then earliest first boundary";
  d["latin_char_len"] = "alphanumeric scalars per word";
  d["series"] = {
      {"zero_gaps", "skipped"},
      {"text_before_first_mark", "counted as a gap"},
      {"text_after_last_mark", "dropped"},
      {"newline", "terminates a run not already ended by a terminal mark; "
                  "acts as a boundary in both scopes"},
  };
  d["outlier_policy"] = config.drop_largest == 0
                            ? std::string("none")
                            : "drop_largest " + std::to_string(config.drop_largest);
  d["distribution"] = "empirical cmf; pmf as successive cmf differences";
  d["zipf"] = {
      {"estimator", "OLS of ln P(R) on ln R"},
      {"range", config.zipf.range
                    ? ordered_json::array({config.zipf.range->lo, config.zipf.range->hi})
                    : ordered_json("auto: 1 .. last rank with count >= 2")},
      {"include_punct", config.zipf.include_punct},
      {"case_fold", config.zipf.case_fold},
      {"crossover", config.zipf.detect_crossover},
      {"crossover_grid_per_decade", kCrossoverGridPerDecade},
      {"crossover_min_segment", config.zipf.min_segment},
  };
  d["weibull"] = {
      {"estimator",
       "maximum likelihood: grid p 0.01..0.99 step 0.01, beta 0.2..3.0 step "
       "0.05, then Nelder-Mead to relative tolerance 1e-6"},
      {"min_samples", config.weibull_min_samples},
      {"rescaled_plot",
       "min-max affine map of the empirical Weibull-plot points onto [0,1]^2; "
       "fitted line mapped with the same transform and clipped to the square"},
  };
  d["mfdfa"] = {
      {"profile", "cumulative sum of mean-centered values"},
      {"detrend_order", config.mfdfa.detrend_order},
      {"q_grid", {config.mfdfa.q_min, config.mfdfa.q_max, config.mfdfa.q_step}},
      {"q0", "exp of the mean of ln f(s, v) over windows"},
      {"windows", "floor(T/s) from each end of the profile"},
      {"scales", {{"min", config.mfdfa.min_scale},
                  {"max", "floor(T/4)"},
                  {"count", config.mfdfa.scale_count},
                  {"spacing", "logarithmic, deduplicated"}}},
      {"scale_mode", ScaleModeToJson(config.mfdfa.mode)},
      {"delta_alpha_labels", {{"monofractal_max", 0.1}, {"multifractal_min", 0.2}}},
      {"finite_size_warning_below", kFiniteSizeWarningLength},
  };
  return d.dump();
}

void ParallelFor(std::size_t count, unsigned threads,
                 const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  const unsigned workers = std::clamp<unsigned>(
      threads == 0 ? std::thread::hardware_concurrency() : threads, 1,
      static_cast<unsigned>(count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&]() {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

StageError MakeStageError(std::string stage, std::string series, const Error& e) {
  return {std::move(stage), std::move(series), std::string(ErrorCodeName(e.code())),
          e.what()};
}

struct LoadedInputs {
  std::vector<Document> documents;
  std::optional<Lexicon> lexicon;
};

LoadedInputs LoadInputs(const AnalysisConfig& config) {
  if (config.documents.empty()) Invalid("config lists no documents");
  if (config.units.empty() || config.scopes.empty()) {
    Invalid("config needs at least one unit and one scope");
  }
  for (ScriptClass script : {ScriptClass::kCjk, ScriptClass::kLatin}) {
    try {
      config.PolicyFor(script).Validate();
    } catch (const Error& e) {
      Invalid(std::string(ScriptClassName(script)) + " punctuation policy: " + e.what());
    }
  }
  const auto& m = config.mfdfa;
  if (m.detrend_order < 1 || m.detrend_order > 4) Invalid("mfdfa.detrend_order must be 1..4");
  if (!(m.q_step > 0) || !(m.q_max >= m.q_min)) Invalid("mfdfa q grid is empty");
  if (m.min_scale < m.detrend_order + 2) Invalid("mfdfa.min_scale must be >= detrend_order + 2");
  if (m.scale_count < 8) Invalid("mfdfa.scale_count must be >= 8");
  if (m.mode.kind == ScaleMode::Kind::kManual && !(m.mode.manual.lo < m.mode.manual.hi)) {
    Invalid("mfdfa manual scale range needs lo < hi");
  }
  if (config.zipf.range && (config.zipf.range->lo < 1 ||
                            config.zipf.range->hi <= config.zipf.range->lo)) {
    Invalid("zipf.range needs 1 <= lo < hi");
  }
  if (config.zipf.min_segment < 2) Invalid("zipf.min_segment must be >= 2");
  if (!(config.cjk_threshold >= 0.0 && config.cjk_threshold <= 1.0)) {
    Invalid("cjk_threshold must lie in [0, 1]");
  }

  // Every path is checked before anything is loaded.
  for (const auto& spec : config.documents) {
    if (!std::filesystem::is_regular_file(config.Resolve(spec.path))) {
      Invalid("document not found: " + spec.path);
    }
  }
  if (!config.lexicon_path.empty() &&
      !std::filesystem::is_regular_file(config.Resolve(config.lexicon_path))) {
    Invalid("lexicon not found: " + config.lexicon_path);
  }

  LoadedInputs inputs;
  std::set<std::string> ids;
  for (const auto& spec : config.documents) {
    LoadOptions options;
    options.forced_script = spec.script;
    options.cjk_threshold = config.cjk_threshold;
    options.id = spec.id;
    try {
      inputs.documents.push_back(LoadDocument(config.Resolve(spec.path), options));
    } catch (const Error& e) {
      Invalid(std::string(ErrorCodeName(e.code())) + ": " + e.what());
    }
    inputs.documents.back().source_path = spec.path;
    if (!ids.insert(inputs.documents.back().id).second) {
      Invalid("duplicate document id '" + inputs.documents.back().id + "'");
    }
  }
  const bool needs_lexicon = std::any_of(
      inputs.documents.begin(), inputs.documents.end(),
      [](const Document& d) { return d.script == ScriptClass::kCjk; });
  if (needs_lexicon) {
    if (config.lexicon_path.empty()) {
      Invalid("a CJK document needs a lexicon, but the config names none");
    }
    try {
      inputs.lexicon = LoadLexicon(config.Resolve(config.lexicon_path));
    } catch (const Error& e) {
      Invalid(std::string(ErrorCodeName(e.code())) + ": " + e.what());
    }
  }
  return inputs;
}

void AnalyzeSeries(const AnalysisConfig& config, const TokenSequence& tokens,
                   const PunctPolicy& policy, Unit unit, Scope scope,
                   SeriesResult& result) {
  result.series.unit = unit;
  result.series.scope = scope;
  result.series.source_id = tokens.source_id;
  const std::string key = result.Key();
  try {
    result.series = ExtractDistances(tokens, unit, scope, policy.newline_is_terminal);
  } catch (const Error& e) {
    result.errors.push_back(MakeStageError("series", key, e));
    return;
  }
  if (config.drop_largest > 0) {
    try {
      result.series = TrimOutliers(result.series, config.drop_largest);
    } catch (const Error& e) {
      result.errors.push_back(MakeStageError("outliers", key, e));
      return;
    }
  }
  result.distribution = EmpiricalDistribution(result.series);
  try {
    WeibullFitOptions options;
    options.min_samples = config.weibull_min_samples;
    result.weibull = FitDiscreteWeibull(result.series, options);
  } catch (const Error& e) {
    result.errors.push_back(MakeStageError("weibull", key, e));
  }
  try {
    result.mfdfa = RunMfdfa(result.series, config.mfdfa.ToOptions());
  } catch (const Error& e) {
    result.errors.push_back(MakeStageError("mfdfa", key, e));
  }
}

}  // namespace

PunctPolicy PolicyOverride::Apply(PunctPolicy base) const {
  if (terminal_set) base.terminal_set = *terminal_set;
  if (nonterminal_set) base.nonterminal_set = *nonterminal_set;
  if (excluded_set) base.excluded_set = *excluded_set;
  if (newline_is_terminal) base.newline_is_terminal = *newline_is_terminal;
  return base;
}

MfdfaOptions MfdfaConfig::ToOptions() const {
  MfdfaOptions options;
  options.detrend_order = detrend_order;
  options.qs = QGrid(q_min, q_max, q_step);
  options.min_scale = min_scale;
  options.scale_count = scale_count;
  options.mode = mode;
  options.threads = 1;
  return options;
}

std::filesystem::path AnalysisConfig::Resolve(const std::string& path) const {
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

PunctPolicy AnalysisConfig::PolicyFor(ScriptClass script) const {
  return script == ScriptClass::kCjk ? cjk_policy.Apply(PunctPolicy::ChineseDefault())
                                     : latin_policy.Apply(PunctPolicy::LatinDefault());
}

bool operator==(const AnalysisConfig& a, const AnalysisConfig& b) {
  return a.documents == b.documents && a.lexicon_path == b.lexicon_path &&
         a.cjk_threshold == b.cjk_threshold && a.cjk_policy == b.cjk_policy &&
         a.latin_policy == b.latin_policy && a.units == b.units &&
         a.scopes == b.scopes && a.zipf == b.zipf &&
         a.weibull_min_samples == b.weibull_min_samples && a.mfdfa == b.mfdfa &&
         a.drop_largest == b.drop_largest && a.output_dir == b.output_dir;
}

std::string ConfigToJson(const AnalysisConfig& config) {
  ordered_json j;
  ordered_json docs = ordered_json::array();
  for (const auto& d : config.documents) {
    ordered_json doc;
    doc["path"] = d.path;
    doc["id"] = d.id;
    doc["script"] = d.script ? ordered_json(ScriptClassName(*d.script)) : ordered_json(nullptr);
    docs.push_back(doc);
  }
  j["documents"] = docs;
  j["lexicon"] = config.lexicon_path;
  j["cjk_threshold"] = config.cjk_threshold;
  j["punctuation"] = {{"cjk", PolicyOverrideToJson(config.cjk_policy)},
                      {"latin", PolicyOverrideToJson(config.latin_policy)}};
  ordered_json units = ordered_json::array();
  for (Unit u : config.units) units.push_back(UnitName(u));
  ordered_json scopes = ordered_json::array();
  for (Scope s : config.scopes) scopes.push_back(ScopeName(s));
  j["units"] = units;
  j["scopes"] = scopes;
  j["zipf"] = {
      {"include_punct", config.zipf.include_punct},
      {"case_fold", config.zipf.case_fold},
      {"range", config.zipf.range
                    ? ordered_json::array({config.zipf.range->lo, config.zipf.range->hi})
                    : ordered_json("auto")},
      {"detect_crossover", config.zipf.detect_crossover},
      {"min_segment", config.zipf.min_segment},
  };
  j["weibull"] = {{"min_samples", config.weibull_min_samples}};
  j["mfdfa"] = {
      {"detrend_order", config.mfdfa.detrend_order},
      {"q_min", config.mfdfa.q_min},
      {"q_max", config.mfdfa.q_max},
      {"q_step", config.mfdfa.q_step},
      {"min_scale", config.mfdfa.min_scale},
      {"scale_count", config.mfdfa.scale_count},
      {"scale_mode", ScaleModeToJson(config.mfdfa.mode)},
  };
  j["outliers"] = {{"drop_largest", config.drop_largest}};
  j["output_dir"] = config.output_dir;
  return j.dump(2);
}

AnalysisConfig ConfigFromJson(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    Invalid(std::string("config is not valid JSON: ") + e.what());
  }
  CheckKeys(j,
            {"documents", "lexicon", "cjk_threshold", "punctuation", "units", "scopes",
             "zipf", "weibull", "mfdfa", "outliers", "output_dir"},
            "config");
  AnalysisConfig config;
  if (!j.contains("documents") || !j["documents"].is_array()) {
    Invalid("config needs a \"documents\" array");
  }
  for (const auto& d : j["documents"]) {
    DocumentSpec spec;
    if (d.is_string()) {
      spec.path = d.get<std::string>();
    } else {
      CheckKeys(d, {"path", "id", "script"}, "documents[]");
      spec.path = Get<std::string>(d, "path", "documents[]");
      if (d.contains("id")) spec.id = Get<std::string>(d, "id", "documents[]");
      if (d.contains("script") && !d["script"].is_null()) {
        auto script = ParseScriptClass(Get<std::string>(d, "script", "documents[]"));
        if (!script) Invalid("documents[].script must be \"cjk\" or \"latin\"");
        spec.script = script;
      }
    }
    config.documents.push_back(std::move(spec));
  }
  if (j.contains("lexicon")) config.lexicon_path = Get<std::string>(j, "lexicon", "config");
  if (j.contains("cjk_threshold")) {
    config.cjk_threshold = Get<double>(j, "cjk_threshold", "config");
  }
  if (j.contains("punctuation")) {
    const auto& p = j["punctuation"];
    CheckKeys(p, {"cjk", "latin"}, "punctuation");
    if (p.contains("cjk")) config.cjk_policy = PolicyOverrideFromJson(p["cjk"], "punctuation.cjk");
    if (p.contains("latin")) {
      config.latin_policy = PolicyOverrideFromJson(p["latin"], "punctuation.latin");
    }
  }
  if (j.contains("units")) {
    config.units.clear();
    for (const auto& name : Get<std::vector<std::string>>(j, "units", "config")) {
      auto unit = ParseUnit(name);
      if (!unit) Invalid("unknown unit '" + name + "'");
      config.units.push_back(*unit);
    }
  }
  if (j.contains("scopes")) {
    config.scopes.clear();
    for (const auto& name : Get<std::vector<std::string>>(j, "scopes", "config")) {
      auto scope = ParseScope(name);
      if (!scope) Invalid("unknown scope '" + name + "'");
      config.scopes.push_back(*scope);
    }
  }
  if (j.contains("zipf")) {
    const auto& z = j["zipf"];
    CheckKeys(z, {"include_punct", "case_fold", "range", "detect_crossover", "min_segment"},
              "zipf");
    if (z.contains("include_punct")) config.zipf.include_punct = Get<bool>(z, "include_punct", "zipf");
    if (z.contains("case_fold")) config.zipf.case_fold = Get<bool>(z, "case_fold", "zipf");
    if (z.contains("detect_crossover")) {
      config.zipf.detect_crossover = Get<bool>(z, "detect_crossover", "zipf");
    }
    if (z.contains("min_segment")) config.zipf.min_segment = Get<int>(z, "min_segment", "zipf");
    if (z.contains("range")) {
      const auto& r = z["range"];
      if (r.is_string() && r.get<std::string>() == "auto") {
        config.zipf.range.reset();
      } else if (r.is_array() && r.size() == 2 && r[0].is_number_integer() &&
                 r[1].is_number_integer()) {
        config.zipf.range = RankRange{r[0].get<int64_t>(), r[1].get<int64_t>()};
      } else {
        Invalid("zipf.range must be \"auto\" or [lo, hi]");
      }
    }
  }
  if (j.contains("weibull")) {
    const auto& w = j["weibull"];
    CheckKeys(w, {"min_samples"}, "weibull");
    if (w.contains("min_samples")) {
      config.weibull_min_samples = Get<std::size_t>(w, "min_samples", "weibull");
    }
  }
  if (j.contains("mfdfa")) {
    const auto& m = j["mfdfa"];
    CheckKeys(m, {"detrend_order", "q_min", "q_max", "q_step", "min_scale", "scale_count",
                  "scale_mode"},
              "mfdfa");
    if (m.contains("detrend_order")) config.mfdfa.detrend_order = Get<int>(m, "detrend_order", "mfdfa");
    if (m.contains("q_min")) config.mfdfa.q_min = Get<double>(m, "q_min", "mfdfa");
    if (m.contains("q_max")) config.mfdfa.q_max = Get<double>(m, "q_max", "mfdfa");
    if (m.contains("q_step")) config.mfdfa.q_step = Get<double>(m, "q_step", "mfdfa");
    if (m.contains("min_scale")) config.mfdfa.min_scale = Get<int64_t>(m, "min_scale", "mfdfa");
    if (m.contains("scale_count")) config.mfdfa.scale_count = Get<int>(m, "scale_count", "mfdfa");
    if (m.contains("scale_mode")) config.mfdfa.mode = ScaleModeFromJson(m["scale_mode"]);
  }
  if (j.contains("outliers")) {
    const auto& o = j["outliers"];
    CheckKeys(o, {"drop_largest"}, "outliers");
    if (o.contains("drop_largest")) {
      config.drop_largest = Get<std::size_t>(o, "drop_largest", "outliers");
    }
  }
  if (j.contains("output_dir")) config.output_dir = Get<std::string>(j, "output_dir", "config");
  return config;
}

AnalysisConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Invalid("cannot open config " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  AnalysisConfig config = ConfigFromJson(buffer.str());
  config.base_dir = path.parent_path();
  return config;
}

std::string SeriesResult::Key() const {
  return std::string(UnitName(series.unit)) + "/" + std::string(ScopeName(series.scope));
}

std::size_t ReportBundle::ErrorCount() const {
  std::size_t count = 0;
  for (const auto& doc : documents) {
    count += doc.errors.size();
    for (const auto& s : doc.series) count += s.errors.size();
  }
  return count;
}

std::string_view ToolkitVersion() { return PUNCTKIT_VERSION; }

void ValidateConfig(const AnalysisConfig& config) { (void)LoadInputs(config); }

ReportBundle RunPipeline(const AnalysisConfig& config) {
  const LoadedInputs inputs = LoadInputs(config);

  ReportBundle bundle;
  bundle.provenance.toolkit_version = std::string(ToolkitVersion());
  bundle.provenance.config_json = ordered_json::parse(ConfigToJson(config)).dump();
  bundle.provenance.config_hash = Fnv1a64Hex(bundle.provenance.config_json);
  bundle.provenance.decisions_json = DecisionsJson(config);

  const std::size_t doc_count = inputs.documents.size();
  bundle.documents.resize(doc_count);
  std::vector<std::optional<TokenSequence>> token_seqs(doc_count);

  ParallelFor(doc_count, config.threads, [&](std::size_t i) {
    const Document& doc = inputs.documents[i];
    DocumentResult& result = bundle.documents[i];
    result.id = doc.id;
    result.source_path = doc.source_path;
    result.script = doc.script;
    result.char_count = doc.char_count;
    const PunctPolicy policy = config.PolicyFor(doc.script);
    try {
      token_seqs[i] = doc.script == ScriptClass::kCjk
                          ? SegmentCjk(doc, *inputs.lexicon, policy)
                          : TokenizeLatin(doc, policy);
    } catch (const Error& e) {
      result.errors.push_back(MakeStageError("tokenize", "", e));
      return;
    }
    result.token_count = token_seqs[i]->tokens.size();
    try {
      result.rank_table =
          RankFrequency(*token_seqs[i], config.zipf.include_punct, config.zipf.case_fold);
    } catch (const Error& e) {
      result.errors.push_back(MakeStageError("zipf", "", e));
      return;
    }
    try {
      result.zipf_fit = FitPowerLaw(*result.rank_table, config.zipf.range);
    } catch (const Error& e) {
      result.errors.push_back(MakeStageError("zipf", "", e));
    }
    if (config.zipf.detect_crossover) {
      try {
        result.crossover = DetectCrossover(*result.rank_table, config.zipf.min_segment);
      } catch (const Error& e) {
        result.errors.push_back(MakeStageError("crossover", "", e));
      }
    }
  });

  struct SeriesTask {
    std::size_t doc;
    Unit unit;
    Scope scope;
  };
  std::vector<SeriesTask> tasks;
  for (std::size_t i = 0; i < doc_count; ++i) {
    if (!token_seqs[i]) continue;
    for (Unit unit : config.units) {
      for (Scope scope : config.scopes) tasks.push_back({i, unit, scope});
    }
  }
  std::vector<SeriesResult> series_results(tasks.size());
  ParallelFor(tasks.size(), config.threads, [&](std::size_t t) {
    const SeriesTask& task = tasks[t];
    const PunctPolicy policy = config.PolicyFor(inputs.documents[task.doc].script);
    AnalyzeSeries(config, *token_seqs[task.doc], policy, task.unit, task.scope,
                  series_results[t]);
  });
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    bundle.documents[tasks[t].doc].series.push_back(std::move(series_results[t]));
  }
  return bundle;
}

}  // namespace punctkit
