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

// End-to-end analysis of a set of documents: tokenize, extract series, then
// Zipf, discrete Weibull and MFDFA analyses per document and per
// (unit, scope) series.

#ifndef PUNCTKIT_PIPELINE_H_
#define PUNCTKIT_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "punctkit/corpus.h"
#include "punctkit/mfdfa.h"
#include "punctkit/series.h"
#include "punctkit/tokenizer.h"
#include "punctkit/weibull.h"
#include "punctkit/zipf.h"

namespace punctkit {

struct DocumentSpec {
  std::string path;
  std::string id;  // defaults to the file stem
  std::optional<ScriptClass> script;

  friend bool operator==(const DocumentSpec&, const DocumentSpec&) = default;
};

// Unset fields keep the script's default policy.
struct PolicyOverride {
  std::optional<std::set<std::string>> terminal_set;
  std::optional<std::set<std::string>> nonterminal_set;
  std::optional<std::set<std::string>> excluded_set;
  std::optional<bool> newline_is_terminal;

  PunctPolicy Apply(PunctPolicy base) const;
  friend bool operator==(const PolicyOverride&, const PolicyOverride&) = default;
};

struct ZipfConfig {
  bool include_punct = true;
  bool case_fold = true;
  std::optional<RankRange> range;  // nullopt: automatic range
  bool detect_crossover = true;
  int min_segment = 10;

  friend bool operator==(const ZipfConfig&, const ZipfConfig&) = default;
};

struct MfdfaConfig {
  int detrend_order = kDefaultDetrendOrder;
  double q_min = -4.0;
  double q_max = 4.0;
  double q_step = 0.25;
  int64_t min_scale = kDefaultMinScale;
  int scale_count = kDefaultScaleCount;
  ScaleMode mode;

  MfdfaOptions ToOptions() const;
  friend bool operator==(const MfdfaConfig&, const MfdfaConfig&) = default;
};

struct AnalysisConfig {
  std::vector<DocumentSpec> documents;
  std::string lexicon_path;  // required when any document is CJK
  double cjk_threshold = kDefaultCjkThreshold;
  PolicyOverride cjk_policy;
  PolicyOverride latin_policy;
  std::vector<Unit> units = {Unit::kWords, Unit::kCharacters};
  std::vector<Scope> scopes = {Scope::kAllPunct, Scope::kTerminalOnly};
  ZipfConfig zipf;
  std::size_t weibull_min_samples = 30;
  MfdfaConfig mfdfa;
  std::size_t drop_largest = 0;
  std::string output_dir;
  // Worker threads for the fan-out; 0 uses the hardware concurrency. Not part
  // of the serialized config since it cannot change results.
  unsigned threads = 0;
  // Relative paths resolve against this directory. Not serialized.
  std::filesystem::path base_dir;

  std::filesystem::path Resolve(const std::string& path) const;
  PunctPolicy PolicyFor(ScriptClass script) const;

  friend bool operator==(const AnalysisConfig& a, const AnalysisConfig& b);
};

// JSON config I/O. Throws Error(kValidation) on malformed or unknown fields.
std::string ConfigToJson(const AnalysisConfig& config);
AnalysisConfig ConfigFromJson(std::string_view json);
// Reads the file and sets base_dir to its parent directory.
AnalysisConfig LoadConfig(const std::filesystem::path& path);

struct StageError {
  std::string stage;   // tokenize, series, zipf, weibull, mfdfa, ...
  std::string series;  // "words/all" etc., empty for document-level stages
  std::string code;    // ErrorCodeName
  std::string message;

  friend bool operator==(const StageError&, const StageError&) = default;
};

struct SeriesResult {
  DistanceSeries series;
  std::optional<DistributionTable> distribution;
  std::optional<WeibullFit> weibull;
  std::optional<MfdfaResult> mfdfa;
  std::vector<StageError> errors;

  std::string Key() const;  // "<unit>/<scope>"
};

struct DocumentResult {
  std::string id;
  std::string source_path;
  ScriptClass script = ScriptClass::kLatin;
  std::size_t char_count = 0;
  std::size_t token_count = 0;
  std::optional<RankTable> rank_table;
  std::optional<PowerLawFit> zipf_fit;
  std::optional<CrossoverFit> crossover;
  std::vector<SeriesResult> series;
  std::vector<StageError> errors;
};

struct Provenance {
  std::string toolkit_version;
  std::string config_hash;  // FNV-1a 64 of the canonical config JSON
  std::string config_json;  // canonical config JSON
  // Every default or overridden analysis decision, as canonical JSON text.
  std::string decisions_json;
};

struct ReportBundle {
  Provenance provenance;
  std::vector<DocumentResult> documents;

  bool empty() const { return documents.empty(); }
  std::size_t ErrorCount() const;
};

std::string_view ToolkitVersion();

// Checks every referenced path, loads the documents and (when any is CJK) the
// lexicon, and validates policies. Throws Error(kValidation) before any
// analysis runs.
void ValidateConfig(const AnalysisConfig& config);

// Stage failures are recorded per document / series and do not stop the rest
// of the run. The result is deterministic for a fixed config and inputs.
ReportBundle RunPipeline(const AnalysisConfig& config);

}  // namespace punctkit

#endif  // PUNCTKIT_PIPELINE_H_
