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

#include "relaqm/errors.hpp"

namespace relaqm {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NotAPartition: return "NotAPartition";
    case Errc::ZeroBranch: return "ZeroBranch";
    case Errc::InvalidDimension: return "InvalidDimension";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::TooLarge: return "TooLarge";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::FamilyMismatch: return "FamilyMismatch";
    case Errc::MissingUnitary: return "MissingUnitary";
    case Errc::NotDoublyStochastic: return "NotDoublyStochastic";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::NormalizationError: return "NormalizationError";
    case Errc::DescriptionUnavailable: return "DescriptionUnavailable";
  }
  return "Unknown";
}

void fail(Errc code, const std::string& message, std::string detail) {
  throw Error(code, message, std::move(detail));
}

}  // namespace relaqm
