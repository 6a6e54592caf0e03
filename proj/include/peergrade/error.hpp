// Copyright 2026 The peergrade Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
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

namespace peergrade {

enum class ErrorCode {
  InvalidArgument = 1,
  UnknownStudent,
  TooFewNominations,
  OverlappingNominations,
  SelfNomination,
  SelfRating,
  ScoreOutOfRange,
  GradeOutOfRange,
  EmptyPool,
  NotAResubmission,
  UnknownPost,
  UnknownAssignment,
  MissingAnswers,
  UnknownSkill,
  TrainingIncomplete,
  AssignmentExpired,
  AssignmentClosed,
  EmptyFeedback,
  DuplicateAssessment,
  DuplicateRating,
  NoAssessments,
  UnknownViewer,
  DegenerateMatrix,
  InvalidAlpha,
  OutOfRange,
  LengthMismatch,
  ConstantInput,
  ZeroVarianceGroup,
  TooFewGroups,
  ParameterOutOfRange,
  NonConvergence,
  CohortTooSmall,
  ParseError,
  SchemaMismatch,
  ReferentialIntegrity,
  InvalidConfig,
  EmptyDataset,
  Io,
  /// Output could not be written. Not a validation error: the inputs were fine.
  WriteFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// C boundary can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

/// Validation errors are the ones a user can fix by changing input data.
bool is_validation_error(ErrorCode code) noexcept;

}  // namespace peergrade
