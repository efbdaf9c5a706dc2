// Copyright (c) 2026 The prosodykit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prosody/error.h"

namespace prosody {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kUnreadableFile: return "unreadable_file";
    case ErrorCode::kUnsupportedCodec: return "unsupported_codec";
    case ErrorCode::kMalformedFile: return "malformed_file";
    case ErrorCode::kEmptyAudio: return "empty_audio";
    case ErrorCode::kSampleRateMismatch: return "sample_rate_mismatch";
    case ErrorCode::kShapeMismatch: return "shape_mismatch";
    case ErrorCode::kEmptyInput: return "empty_input";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kMissingCache: return "missing_cache";
    case ErrorCode::kParseError: return "parse_error";
  }
  return "unknown";
}

}  // namespace prosody
