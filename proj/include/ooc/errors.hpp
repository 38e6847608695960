/******************************************************************************
 * Copyright 2026 The OOC Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ooc {

enum class ErrorCode {
  // netgraph
  SelfLoop,
  DuplicateEdge,
  BadIndex,
  NotStronglyConnected,
  NullSpaceDegenerate,
  // costmodel
  ParseError,
  DomainError,
  NotPositiveDefinite,
  NonConvexDetected,
  NoConvergence,
  // plantmodel
  ShapeMismatch,
  Unsolvable,
  NotHurwitz,
  NotStabilizable,
  NotDetectable,
  // controller / simulator
  ConfigOverridesV0,
  ZGuardViolated,
  NumericalBlowup,
  // cli
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::NullSpaceDegenerate: return "NullSpaceDegenerate";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NonConvexDetected: return "NonConvexDetected";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::Unsolvable: return "Unsolvable";
    case ErrorCode::NotHurwitz: return "NotHurwitz";
    case ErrorCode::NotStabilizable: return "NotStabilizable";
    case ErrorCode::NotDetectable: return "NotDetectable";
    case ErrorCode::ConfigOverridesV0: return "ConfigOverridesV0";
    case ErrorCode::ZGuardViolated: return "ZGuardViolated";
    case ErrorCode::NumericalBlowup: return "NumericalBlowup";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace ooc
