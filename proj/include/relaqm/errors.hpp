// Copyright 2026 The relaqm Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace relaqm {

enum class Errc {
  DimensionMismatch,
  NotNormalized,
  NotAPartition,
  ZeroBranch,
  InvalidDimension,
  PreconditionViolated,
  TooLarge,
  IndexOutOfRange,
  FamilyMismatch,
  MissingUnitary,
  NotDoublyStochastic,
  NotHermitian,
  NotUnitary,
  ParseError,
  ValidationError,
  NormalizationError,
  DescriptionUnavailable,
};

std::string_view errc_name(Errc code);

// All library failures are reported as relaqm::Error. `detail()` carries the
// violated rule for ValidationError (e.g. "SelfMeasurement") and the offending
// field for ParseError.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::string detail = {})
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

[[noreturn]] void fail(Errc code, const std::string& message, std::string detail = {});

}  // namespace relaqm
