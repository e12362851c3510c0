//
// Copyright 2026 The sdcwork Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SDC_ERROR_H_
#define SDC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdc {

enum class ErrorCode {
  kInvalidArgument,     // malformed input or parameters
  kParse,               // CSV / value / JSON parse failure
  kNotFound,            // unknown column, dataset, session
  kFailedPrecondition,  // operation precondition violated by the data
  kSchemaMismatch,      // data does not match a supplied schema
  kEmptySubset,         // subset predicate selected no rows
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type. The code
// lets front ends (CLI exit status, HTTP status) classify the failure without
// parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace sdc

#endif  // SDC_ERROR_H_
