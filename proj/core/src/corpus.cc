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

#include "punctkit/corpus.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include "punctkit/error.h"
#include "punctkit/text_util.h"

namespace punctkit {

namespace {

constexpr char32_t kByteOrderMark = U'\uFEFF';

}  // namespace

std::string_view ScriptClassName(ScriptClass script) {
  return script == ScriptClass::kCjk ? "cjk" : "latin";
}

std::optional<ScriptClass> ParseScriptClass(std::string_view name) {
  if (name == "cjk") return ScriptClass::kCjk;
  if (name == "latin") return ScriptClass::kLatin;
  return std::nullopt;
}

std::string Document::Utf8Text() const { return EncodeUtf8(text); }

double CjkFraction(std::u32string_view text) {
  std::size_t counted = 0;
  std::size_t cjk = 0;
  for (char32_t c : text) {
    if (IsWhitespace(c) || IsPunctuation(c)) continue;
    ++counted;
    if (IsCjkScalar(c)) ++cjk;
  }
  if (counted == 0) return 0.0;
  return static_cast<double>(cjk) / static_cast<double>(counted);
}

ScriptClass DetectScript(std::u32string_view text, double threshold) {
  return CjkFraction(text) > threshold ? ScriptClass::kCjk
                                       : ScriptClass::kLatin;
}

std::u32string NormalizeText(std::u32string_view text) {
  // Byte-order marks go first so that "\r<BOM>\n" is still one line break.
  std::u32string stripped;
  stripped.reserve(text.size());
  for (char32_t c : text) {
    if (c != kByteOrderMark) stripped.push_back(c);
  }
  std::u32string canonical;
  canonical.reserve(stripped.size());
  for (std::size_t i = 0; i < stripped.size(); ++i) {
    const char32_t c = stripped[i];
    if (c == U'\r') {
      canonical.push_back(U'\n');
      if (i + 1 < stripped.size() && stripped[i + 1] == U'\n') ++i;
      continue;
    }
    canonical.push_back(c);
  }
  return NormalizeNfc(canonical);
}

Document MakeDocument(std::string_view utf8, std::string id,
                      std::string source_path, const LoadOptions& options) {
  Document doc;
  doc.id = std::move(id);
  doc.source_path = std::move(source_path);
  doc.text = NormalizeText(DecodeUtf8(utf8));
  doc.char_count = doc.text.size();
  const bool blank = std::all_of(doc.text.begin(), doc.text.end(),
                                 [](char32_t c) { return IsWhitespace(c); });
  if (blank) {
    throw Error(ErrorCode::kEmptyDocument,
                "document '" + doc.id + "' has no non-whitespace content");
  }
  doc.script = options.forced_script.value_or(
      DetectScript(doc.text, options.cjk_threshold));
  return doc;
}

Document LoadDocument(const std::filesystem::path& path,
                      const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::kIo, "read failed for " + path.string());
  }
  std::string id = options.id.empty() ? path.stem().string() : options.id;
  try {
    return MakeDocument(buffer.str(), std::move(id), path.string(), options);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kEncoding) {
      throw Error(e.code(), path.string() + ": " + e.what());
    }
    throw;
  }
}

}  // namespace punctkit
