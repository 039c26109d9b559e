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

// Loading and normalizing raw UTF-8 text files.
//
// A Document holds the NFC-normalized scalar sequence of one input file with
// canonical "\n" line separators and no byte-order marks. Front matter and
// chapter headings are analyzed as given; stripping them is up to the caller.

#ifndef PUNCTKIT_CORPUS_H_
#define PUNCTKIT_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace punctkit {

enum class ScriptClass { kCjk, kLatin };

// "cjk" / "latin".
std::string_view ScriptClassName(ScriptClass script);
std::optional<ScriptClass> ParseScriptClass(std::string_view name);

inline constexpr double kDefaultCjkThreshold = 0.5;

struct Document {
  std::string id;
  std::u32string text;
  ScriptClass script = ScriptClass::kLatin;
  std::string source_path;
  std::size_t char_count = 0;

  std::string Utf8Text() const;
};

struct LoadOptions {
  std::optional<ScriptClass> forced_script;
  double cjk_threshold = kDefaultCjkThreshold;
  // Defaults to the file stem when empty.
  std::string id;
};

// Fraction of CJK scalars among the non-whitespace, non-punctuation scalars
// of `text`. Zero when there are no such scalars.
double CjkFraction(std::u32string_view text);

// kCjk iff CjkFraction(text) > threshold.
ScriptClass DetectScript(std::u32string_view text, double threshold);

// BOM removal, "\r\n" / "\r" -> "\n", then NFC. Idempotent.
std::u32string NormalizeText(std::u32string_view text);

// Builds a Document from in-memory UTF-8. Throws kEncoding or kEmptyDocument.
Document MakeDocument(std::string_view utf8, std::string id,
                      std::string source_path, const LoadOptions& options = {});

// Throws kIo, kEncoding or kEmptyDocument.
Document LoadDocument(const std::filesystem::path& path,
                      const LoadOptions& options = {});

}  // namespace punctkit

#endif  // PUNCTKIT_CORPUS_H_
