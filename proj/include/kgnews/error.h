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


#ifndef KGNEWS_ERROR_H_
#define KGNEWS_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace kgnews {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  // broadcast_ingest
  kMalformedRow,
  kScoreRegression,
  kClockRegression,
  kPointsMismatch,
  kUnknownTeam,
  kUnclassified,
  kClockRange,
  // kg_store
  kUnknownAttribute,
  kAliasCollision,
  kDanglingEndpoint,
  kSignature,
  kUnknownEntity,
  kSchema,
  // kgc_meta
  kShapeMismatch,
  kNonFinite,
  kUnpairedNegatives,
  kPoolTooSmall,
  kInvalidEpsilon,
  kDivergence,
  // kee
  kEmptyScope,
  // templater
  kMalformedMarker,
  kCoverage,
  kMissingSlot,
  // enricher
  kUnknownRelation,
  // rouge_eval
  kLengthMismatch,
  // cli
  kConfig,
  kStage,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported with this exception type. The code is
// stable and machine-checkable; the message carries the human context (row
// number, offending id, slot name, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kgnews

#endif  // KGNEWS_ERROR_H_
