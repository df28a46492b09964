// Copyright 2026 The GIE Authors. All Rights Reserved.
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

#include "gie/error.hpp"

namespace gie {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kPointOutsideManifold: return "PointOutsideManifold";
    case ErrorCode::kNumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kChartMismatch: return "ChartMismatch";
    case ErrorCode::kGradientNonFinite: return "GradientNonFinite";
    case ErrorCode::kTrainingDiverged: return "TrainingDiverged";
    case ErrorCode::kDatasetNotFound: return "DatasetNotFound";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kVocabMismatch: return "VocabMismatch";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kNotConnected: return "NotConnected";
    case ErrorCode::kUndefined: return "Undefined";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace gie
