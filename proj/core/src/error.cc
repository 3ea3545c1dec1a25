// Copyright 2026 The NGM Toolkit Authors.
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

#include "ngm/error.h"

namespace ngm {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig:
      return "invalid-config";
    case ErrorCode::kShape:
      return "shape";
    case ErrorCode::kInvalidLabel:
      return "invalid-label";
    case ErrorCode::kValidation:
      return "validation";
    case ErrorCode::kData:
      return "data";
    case ErrorCode::kParse:
      return "parse";
    case ErrorCode::kNumericFault:
      return "numeric-fault";
    case ErrorCode::kSingular:
      return "singular";
    case ErrorCode::kNotConverged:
      return "not-converged";
    case ErrorCode::kInternal:
      return "internal";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + " error: " +
                         message),
      code_(code),
      message_(message) {}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ngm
