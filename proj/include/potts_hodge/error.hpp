// Copyright 2023 The Authors.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace potts_hodge {

enum class ErrorKind {
  kInvalidParameters,
  kNotAMatroid,
  kResourceLimit,
  kDegenerateSimplification,
  kIndeterminateSignature,
  kSamplingFailure,
  kHypothesisFailed,
  kNotApplicable,
  kImpossibleState,
  kParseError,
  kConfigError,
};

inline std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameters: return "invalid-parameters";
    case ErrorKind::kNotAMatroid: return "not-a-matroid";
    case ErrorKind::kResourceLimit: return "resource-limit";
    case ErrorKind::kDegenerateSimplification: return "degenerate-simplification";
    case ErrorKind::kIndeterminateSignature: return "indeterminate-signature";
    case ErrorKind::kSamplingFailure: return "sampling-failure";
    case ErrorKind::kHypothesisFailed: return "hypothesis-failed";
    case ErrorKind::kNotApplicable: return "not-applicable";
    case ErrorKind::kImpossibleState: return "impossible-state";
    case ErrorKind::kParseError: return "parse-error";
    case ErrorKind::kConfigError: return "config-error";
  }
  return "unknown";
}

// Every failure in the library surfaces as this exception; `kind()` is the
// stable machine-readable tag, `what()` carries the human detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace potts_hodge
