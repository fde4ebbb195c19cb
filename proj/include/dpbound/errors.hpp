// SPDX-License-Identifier: Apache-2.0
//
// dpbound - capacity bounds for compound vector dirty paper channels
// Copyright (C) 2026 The dpbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpbound {

enum class ErrorCode {
  DimensionMismatch,
  NotPSD,
  QsRankDeficient,
  NegativeParameter,
  NonpositiveVariance,
  NotSquare,
  BothSingular,
  PartitionMismatch,
  InfeasibleDimensions,
  RankZeroSignal,
  ZeroAmax,
  TooLarge,
  InfeasiblePsi,
  NotRankOne,
  BadSpec,
  ParseError,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::QsRankDeficient: return "QsRankDeficient";
    case ErrorCode::NegativeParameter: return "NegativeParameter";
    case ErrorCode::NonpositiveVariance: return "NonpositiveVariance";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::BothSingular: return "BothSingular";
    case ErrorCode::PartitionMismatch: return "PartitionMismatch";
    case ErrorCode::InfeasibleDimensions: return "InfeasibleDimensions";
    case ErrorCode::RankZeroSignal: return "RankZeroSignal";
    case ErrorCode::ZeroAmax: return "ZeroAmax";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InfeasiblePsi: return "InfeasiblePsi";
    case ErrorCode::NotRankOne: return "NotRankOne";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception; `code()`
/// identifies the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dpbound
