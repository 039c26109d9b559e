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

#include "punctkit/error.h"

namespace punctkit {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kEncoding: return "EncodingError";
    case ErrorCode::kEmptyDocument: return "EmptyDocument";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kEmptyLexicon: return "EmptyLexicon";
    case ErrorCode::kScriptMismatch: return "ScriptMismatch";
    case ErrorCode::kPolicy: return "PolicyError";
    case ErrorCode::kNoBoundaries: return "NoBoundaries";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kRangeTooSmall: return "RangeTooSmall";
    case ErrorCode::kDomain: return "DomainError";
    case ErrorCode::kSampleTooSmall: return "SampleTooSmall";
    case ErrorCode::kFitDiverged: return "FitDiverged";
    case ErrorCode::kDegenerateSupport: return "DegenerateSupport";
    case ErrorCode::kSeriesTooShort: return "SeriesTooShort";
    case ErrorCode::kScaleOutOfRange: return "ScaleOutOfRange";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kValidation: return "ValidationError";
  }
  return "UnknownError";
}

}  // namespace punctkit
