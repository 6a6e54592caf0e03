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

#include "peergrade/types.hpp"

#include <cmath>

#include "peergrade/error.hpp"

namespace peergrade {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownStudent: return "UnknownStudent";
    case ErrorCode::TooFewNominations: return "TooFewNominations";
    case ErrorCode::OverlappingNominations: return "OverlappingNominations";
    case ErrorCode::SelfNomination: return "SelfNomination";
    case ErrorCode::SelfRating: return "SelfRating";
    case ErrorCode::ScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::GradeOutOfRange: return "GradeOutOfRange";
    case ErrorCode::EmptyPool: return "EmptyPool";
    case ErrorCode::NotAResubmission: return "NotAResubmission";
    case ErrorCode::UnknownPost: return "UnknownPost";
    case ErrorCode::UnknownAssignment: return "UnknownAssignment";
    case ErrorCode::MissingAnswers: return "MissingAnswers";
    case ErrorCode::UnknownSkill: return "UnknownSkill";
    case ErrorCode::TrainingIncomplete: return "TrainingIncomplete";
    case ErrorCode::AssignmentExpired: return "AssignmentExpired";
    case ErrorCode::AssignmentClosed: return "AssignmentClosed";
    case ErrorCode::EmptyFeedback: return "EmptyFeedback";
    case ErrorCode::DuplicateAssessment: return "DuplicateAssessment";
    case ErrorCode::DuplicateRating: return "DuplicateRating";
    case ErrorCode::NoAssessments: return "NoAssessments";
    case ErrorCode::UnknownViewer: return "UnknownViewer";
    case ErrorCode::DegenerateMatrix: return "DegenerateMatrix";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ConstantInput: return "ConstantInput";
    case ErrorCode::ZeroVarianceGroup: return "ZeroVarianceGroup";
    case ErrorCode::TooFewGroups: return "TooFewGroups";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::CohortTooSmall: return "CohortTooSmall";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::ReferentialIntegrity: return "ReferentialIntegrity";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::Io: return "Io";
    case ErrorCode::WriteFailed: return "WriteFailed";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::SchemaMismatch:
    case ErrorCode::ReferentialIntegrity:
    case ErrorCode::InvalidConfig:
    case ErrorCode::EmptyDataset:
    case ErrorCode::GradeOutOfRange:
    case ErrorCode::ScoreOutOfRange:
    case ErrorCode::TooFewNominations:
    case ErrorCode::OverlappingNominations:
    case ErrorCode::SelfNomination:
    case ErrorCode::SelfRating:
    case ErrorCode::UnknownStudent:
    case ErrorCode::InvalidAlpha:
    case ErrorCode::InvalidArgument:
    case ErrorCode::Io:
    case ErrorCode::CohortTooSmall:
    case ErrorCode::TooFewGroups:
      return true;
    default:
      return false;
  }
}

Grade::Grade(int value) {
  if (value < kMin || value > kMax) {
    fail(ErrorCode::GradeOutOfRange,
         "grade " + std::to_string(value) + " outside [0, 5]");
  }
  value_ = static_cast<std::uint8_t>(value);
}

std::string_view to_string(RelationshipClass cls) noexcept {
  switch (cls) {
    case RelationshipClass::Like: return "like";
    case RelationshipClass::Dislike: return "dislike";
    case RelationshipClass::Neutral: return "neutral";
    case RelationshipClass::Unknown: return "unknown";
  }
  return "unknown";
}

RelationshipClass parse_relationship(std::string_view text) {
  if (text == "like") return RelationshipClass::Like;
  if (text == "dislike") return RelationshipClass::Dislike;
  if (text == "neutral") return RelationshipClass::Neutral;
  if (text == "unknown") return RelationshipClass::Unknown;
  fail(ErrorCode::ParseError, "unknown relationship class '" + std::string(text) + "'");
}

std::string_view to_string(RoundingMode mode) noexcept {
  return mode == RoundingMode::HalfToEven ? "half_to_even" : "half_away_from_zero";
}

RoundingMode parse_rounding(std::string_view text) {
  if (text == "half_away_from_zero") return RoundingMode::HalfAwayFromZero;
  if (text == "half_to_even") return RoundingMode::HalfToEven;
  fail(ErrorCode::InvalidConfig, "unknown rounding mode '" + std::string(text) + "'");
}

long round_with(double value, RoundingMode mode) noexcept {
  if (mode == RoundingMode::HalfAwayFromZero) return std::lround(value);
  const double floor = std::floor(value);
  const double frac = value - floor;
  long base = static_cast<long>(floor);
  if (frac > 0.5) return base + 1;
  if (frac < 0.5) return base;
  return (base % 2 == 0) ? base : base + 1;
}

}  // namespace peergrade
