// Copyright 2026 The Erasure Bound Authors
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

#include "erasure/error.hpp"

namespace erasure {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonSquare: return "NonSquare";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNotPsd: return "NotPsd";
    case ErrorCode::kUnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::kWrongDimension: return "WrongDimension";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kEmptyKeepSet: return "EmptyKeepSet";
    case ErrorCode::kNegligibleProbability: return "NegligibleProbability";
    case ErrorCode::kInvalidState: return "InvalidState";
    case ErrorCode::kInvalidPom: return "InvalidPom";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kWrongAccessibleDimension: return "WrongAccessibleDimension";
    case ErrorCode::kDegenerateDraw: return "DegenerateDraw";
    case ErrorCode::kUnsupportedK: return "UnsupportedK";
    case ErrorCode::kInsufficientPoints: return "InsufficientPoints";
    case ErrorCode::kProductState: return "ProductState";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

}  // namespace erasure
