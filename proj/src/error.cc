// Copyright 2026 The kgnews Authors.
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


#include "kgnews/error.h"

namespace kgnews {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kIo: return "IO";
    case ErrorCode::kMalformedRow: return "MALFORMED_ROW";
    case ErrorCode::kScoreRegression: return "SCORE_REGRESSION";
    case ErrorCode::kClockRegression: return "CLOCK_REGRESSION";
    case ErrorCode::kPointsMismatch: return "POINTS_MISMATCH";
    case ErrorCode::kUnknownTeam: return "UNKNOWN_TEAM";
    case ErrorCode::kUnclassified: return "UNCLASSIFIED";
    case ErrorCode::kClockRange: return "CLOCK_RANGE";
    case ErrorCode::kUnknownAttribute: return "UNKNOWN_ATTRIBUTE";
    case ErrorCode::kAliasCollision: return "ALIAS_COLLISION";
    case ErrorCode::kDanglingEndpoint: return "DANGLING_ENDPOINT";
    case ErrorCode::kSignature: return "SIGNATURE";
    case ErrorCode::kUnknownEntity: return "UNKNOWN_ENTITY";
    case ErrorCode::kSchema: return "SCHEMA";
    case ErrorCode::kShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::kNonFinite: return "NON_FINITE";
    case ErrorCode::kUnpairedNegatives: return "UNPAIRED_NEGATIVES";
    case ErrorCode::kPoolTooSmall: return "POOL_TOO_SMALL";
    case ErrorCode::kInvalidEpsilon: return "INVALID_EPSILON";
    case ErrorCode::kDivergence: return "DIVERGENCE";
    case ErrorCode::kEmptyScope: return "EMPTY_SCOPE";
    case ErrorCode::kMalformedMarker: return "MALFORMED_MARKER";
    case ErrorCode::kCoverage: return "COVERAGE";
    case ErrorCode::kMissingSlot: return "MISSING_SLOT";
    case ErrorCode::kUnknownRelation: return "UNKNOWN_RELATION";
    case ErrorCode::kLengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::kConfig: return "CONFIG";
    case ErrorCode::kStage: return "STAGE";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace kgnews
