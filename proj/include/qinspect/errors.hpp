// Copyright 2026 The qinspect Authors
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

#ifndef QINSPECT_ERRORS_HPP_
#define QINSPECT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qinspect {

enum class ErrorKind {
  kInvalidParameters,
  kNotNormalized,
  kInvalidState,
  kInfeasibleProgram,
  kConfigParse,
};

inline const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameters: return "invalid-parameters";
    case ErrorKind::kNotNormalized: return "not-normalized";
    case ErrorKind::kInvalidState: return "invalid-state";
    case ErrorKind::kInfeasibleProgram: return "infeasible-program";
    case ErrorKind::kConfigParse: return "config-parse-error";
  }
  return "unknown";
}

// All library failures are reported through this exception type; `kind()`
// lets callers (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qinspect

#endif  // QINSPECT_ERRORS_HPP_
