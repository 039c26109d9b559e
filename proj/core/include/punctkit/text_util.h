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

// UTF-8 / UTF-32 conversion and scalar classification helpers shared by the
// corpus and tokenizer layers.

#ifndef PUNCTKIT_TEXT_UTIL_H_
#define PUNCTKIT_TEXT_UTIL_H_

#include <string>
#include <string_view>

namespace punctkit {

// Strict decode. Throws Error(kEncoding) on malformed input, naming the byte
// offset of the first bad sequence.
std::u32string DecodeUtf8(std::string_view bytes);

std::string EncodeUtf8(std::u32string_view text);
std::string EncodeUtf8(char32_t scalar);

// Number of scalar values in a valid UTF-8 string.
std::size_t ScalarCount(std::string_view utf8);

bool IsWhitespace(char32_t c);
bool IsPunctuation(char32_t c);
bool IsAlphanumeric(char32_t c);

// Han, kana, hangul and bopomofo scalars.
bool IsCjkScalar(char32_t c);

// Unicode NFC.
std::u32string NormalizeNfc(std::u32string_view text);

// Full case folding, as used for rank-frequency keys.
std::string FoldCase(std::string_view utf8);

}  // namespace punctkit

#endif  // PUNCTKIT_TEXT_UTIL_H_
