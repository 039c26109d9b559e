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

#ifndef PUNCTKIT_ERROR_H_
#define PUNCTKIT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace punctkit {

// Every failure raised by the library carries one of these codes. The CLI
// maps kValidation-class codes to exit status 1 and the rest to 2.
enum class ErrorCode {
  kIo,
  kEncoding,
  kEmptyDocument,
  kParse,
  kEmptyLexicon,
  kScriptMismatch,
  kPolicy,
  kNoBoundaries,
  kEmptyInput,
  kRangeTooSmall,
  kDomain,
  kSampleTooSmall,
  kFitDiverged,
  kDegenerateSupport,
  kSeriesTooShort,
  kScaleOutOfRange,
  kZeroVariance,
  kTooFewPoints,
  kValidation,
};

// Stable name used in reports, e.g. "RangeTooSmall".
std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace punctkit

#endif  // PUNCTKIT_ERROR_H_
