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

#ifndef PUNCTKIT_SRC_CSV_H_
#define PUNCTKIT_SRC_CSV_H_

#include <initializer_list>
#include <string>
#include <string_view>

namespace punctkit::internal {

// Shortest round-trip decimal form; "nan"/"inf" for non-finite values.
std::string FormatDouble(double value);

// RFC 4180 quoting when the field holds a comma, quote or line break.
std::string CsvField(std::string_view field);

void AppendCsvRow(std::string& out, std::initializer_list<std::string> fields);

}  // namespace punctkit::internal

#endif  // PUNCTKIT_SRC_CSV_H_
