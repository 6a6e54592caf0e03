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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "peergrade/assignment.hpp"
#include "peergrade/sociometry.hpp"
#include "peergrade/types.hpp"

namespace peergrade {

struct AssessmentRow {
  PostId post;
  StudentId grader;
  Grade grade;
  std::string feedback;
  Instant submitted_at = 0;

  friend bool operator==(const AssessmentRow&, const AssessmentRow&) = default;
};

struct ProfessorRow {
  PostId post;
  Grade grade;

  friend bool operator==(const ProfessorRow&, const ProfessorRow&) = default;
};

struct TrainingRow {
  StudentId student;
  SkillId skill;
  bool completed = false;
  std::uint32_t attempts = 0;

  friend bool operator==(const TrainingRow&, const TrainingRow&) = default;
};

struct AssignmentRow {
  PostId post;
  StudentId grader;
  Instant issued_at = 0;
  Instant deadline = 0;
  AssignmentStatus status = AssignmentStatus::Pending;
  RelationshipClass relationship_at_issue = RelationshipClass::Unknown;

  friend bool operator==(const AssignmentRow&, const AssignmentRow&) = default;
};

/// One completed peer assessment, flattened with everything the analyses need.
struct AssessmentRecord {
  PostId post;
  SkillId skill;
  StudentId author;
  StudentId grader;
  RelationshipClass relationship = RelationshipClass::Unknown;
  Grade peer_grade;
  std::optional<Grade> professor_grade;
  /// Position of this assessment among the post's assessments, by submission.
  std::uint32_t order = 0;
  std::uint32_t assessment_count = 0;
  Grade final_peer_grade;
  double mean_peer_grade = 0.0;
  Instant submitted_at = 0;

  friend bool operator==(const AssessmentRecord&, const AssessmentRecord&) = default;
};

/// Source tables plus the derived flat records. The records are always a
/// function of the tables (see derive_records).
struct Dataset {
  std::vector<StudentId> students;
  std::vector<Post> posts;
  std::vector<AssessmentRow> assessments;
  std::vector<ProfessorRow> professor;
  std::vector<NominationSet> nominations;
  std::vector<PeerRating> ratings;
  std::vector<TrainingRow> training;
  std::vector<AssignmentRow> assignments;
  RoundingMode rounding = RoundingMode::HalfAwayFromZero;
  RatingBuckets buckets;

  std::vector<AssessmentRecord> records;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Rebuilds `ds.records` from the tables. Assessments with blank feedback are
/// skipped; relationships come from replaying nominations then ratings,
/// bucketed with `ds.buckets`.
void derive_records(Dataset& ds);

/// Mean of the grades rounded to an integer grade with the given tie rule.
Grade final_peer_grade(const std::vector<Grade>& grades, RoundingMode mode);

/// True if the text has at least one non-whitespace character.
bool has_feedback(const std::string& text) noexcept;

/// One row per post that has at least one record.
struct PostSummary {
  PostId post;
  std::uint32_t assessment_count = 0;
  double mean_peer_grade = 0.0;
  Grade final_peer_grade;
  std::optional<Grade> professor_grade;
  /// Peer grades in submission order.
  std::vector<double> grades;
};

std::vector<PostSummary> summarize_posts(const Dataset& ds);

}  // namespace peergrade
