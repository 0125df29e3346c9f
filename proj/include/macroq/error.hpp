// Copyright 2026 The macroq Authors.
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

namespace macroq {

enum class ErrorKind {
  DimensionMismatch,
  NonNormalized,
  NonHermitian,
  NotPositiveSemidefinite,
  IndexOutOfRange,
  InvalidArgument,
  TooLarge,
  CutoffTooSmall,
  NonPositiveUnit,
  OutOfRange,
  FlatSpectrum,
  AllZeroWeights,
  NoConvergence,
  CounterexampleFound,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonNormalized: return "NonNormalized";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorKind::NonPositiveUnit: return "NonPositiveUnit";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::FlatSpectrum: return "FlatSpectrum";
    case ErrorKind::AllZeroWeights: return "AllZeroWeights";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::CounterexampleFound: return "CounterexampleFound";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace macroq
