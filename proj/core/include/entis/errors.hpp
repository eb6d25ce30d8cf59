// Copyright 2026 The entis Authors.
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

#ifndef ENTIS_ERRORS_HPP
#define ENTIS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace entis {

/// Failure categories raised by the library.
enum class ErrorKind {
  kInvalidArgument,
  kDomainError,
  kMismatchedSupport,
  kAllWeightsDegenerate,
  kDegenerateTilt,
  kInfeasibleMoment,
  kSingularHessian,
  kMaxIterations,
  kProfileIncomplete,
  kGridTooNarrow,
  kEmptyFeasibleSet,
  kDegenerateReference,
  kQuadratureFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base exception; `kind()` identifies the failure without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  /// Numerical failures (as opposed to bad input) map to a distinct CLI exit code.
  [[nodiscard]] bool is_numerical() const noexcept {
    return kind_ != ErrorKind::kInvalidArgument && kind_ != ErrorKind::kDomainError &&
           kind_ != ErrorKind::kMismatchedSupport;
  }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kDomainError: return "DomainError";
    case ErrorKind::kMismatchedSupport: return "MismatchedSupport";
    case ErrorKind::kAllWeightsDegenerate: return "AllWeightsDegenerate";
    case ErrorKind::kDegenerateTilt: return "DegenerateTilt";
    case ErrorKind::kInfeasibleMoment: return "InfeasibleMoment";
    case ErrorKind::kSingularHessian: return "SingularHessian";
    case ErrorKind::kMaxIterations: return "MaxIterations";
    case ErrorKind::kProfileIncomplete: return "ProfileIncomplete";
    case ErrorKind::kGridTooNarrow: return "GridTooNarrow";
    case ErrorKind::kEmptyFeasibleSet: return "EmptyFeasibleSet";
    case ErrorKind::kDegenerateReference: return "DegenerateReference";
    case ErrorKind::kQuadratureFailure: return "QuadratureFailure";
  }
  return "Unknown";
}

}  // namespace entis

#endif
