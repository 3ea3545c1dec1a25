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

#ifndef NGM_ERROR_H_
#define NGM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ngm {

// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorCode {
  kInvalidConfig,
  kShape,
  kInvalidLabel,
  kValidation,
  kData,
  kParse,
  kNumericFault,
  kSingular,
  kNotConverged,
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }
  // The message without the category prefix.
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace ngm

#endif  // NGM_ERROR_H_
