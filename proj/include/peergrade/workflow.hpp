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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "peergrade/assignment.hpp"
#include "peergrade/dataset.hpp"
#include "peergrade/sociometry.hpp"
#include "peergrade/types.hpp"

namespace peergrade {

inline constexpr std::size_t kRevealThreshold = 3;

struct TrainingSample {
  std::uint32_t sample_id = 0;
  Grade faculty_grade;
};

/// Rubric page for one skill. Needs at least two faculty-graded samples.
struct TrainingPage {
  SkillId skill;
  std::string criteria;
  std::vector<TrainingSample> samples;
};

struct TrainingAnswer {
  std::uint32_t sample_id = 0;
  Grade grade;
};

struct TrainingStatus {
  StudentId student;
  SkillId skill;
  bool completed = false;
  std::uint32_t attempts = 0;
};

struct PeerAssessment {
  AssignmentId assignment;
  PostId post;
  StudentId grader;
  Grade grade;
  std::string feedback;
  Instant submitted_at = 0;
};

struct ProfessorRating {
  PostId post;
  Grade grade;
  std::string reply;
};

class Viewer {
 public:
  static Viewer professor() { return Viewer(true, StudentId{}); }
  static Viewer student(StudentId id) { return Viewer(false, id); }

  bool is_professor() const noexcept { return professor_; }
  StudentId id() const noexcept { return id_; }

 private:
  Viewer(bool professor, StudentId id) : professor_(professor), id_(id) {}
  bool professor_;
  StudentId id_;
};

/// An individual grade as the author sees it: no grader identity.
struct AnonymousAssessment {
  Grade grade;
  std::string feedback;
};

/// What one viewer may see of a post. The type has no field that could carry
/// a grader's identity.
struct VisibilityView {
  Viewer viewer = Viewer::professor();
  PostId post;
  bool sees_professor = false;
  bool sees_final_peer_grade = false;
  bool sees_individual_grades = false;
  static constexpr bool grader_identities_visible = false;

  std::optional<ProfessorRating> professor;
  std::optional<Grade> final_peer_grade;
  std::vector<AnonymousAssessment> individual;
};

struct SubmitResult {
  Post post;
  std::vector<Assignment> assignments;
  bool short_pool = false;
};

struct WorkflowConfig {
  AssignmentConfig assignment;
  std::size_t reveal_threshold = kRevealThreshold;
  RoundingMode rounding = RoundingMode::HalfAwayFromZero;
};

/// Post lifecycle: training gate, submission, peer assessment, professor
/// rating, reveal rules. State changes are serialized by the caller; const
/// queries are pure over the current state.
class Workflow {
 public:
  explicit Workflow(WorkflowConfig config = {}, SociometryDB db = SociometryDB{});

  SociometryDB& sociometry() noexcept { return db_; }
  const SociometryDB& sociometry() const noexcept { return db_; }
  const AssignmentEngine& engine() const noexcept { return engine_; }
  const WorkflowConfig& config() const noexcept { return config_; }

  void add_training_page(TrainingPage page);
  TrainingStatus complete_training(StudentId student, SkillId skill,
                                   std::span<const TrainingAnswer> answers);
  bool is_trained(StudentId student, SkillId skill) const;

  /// Creates a post and issues its reviewers. With `parent`, the post is a
  /// resubmission and inherits the parent's graders.
  SubmitResult submit_post(StudentId student, SkillId skill, std::string content_ref, Instant now,
                           std::optional<PostId> parent = std::nullopt);

  PeerAssessment submit_assessment(AssignmentId assignment, Grade grade, std::string feedback,
                                   Instant now);

  ProfessorRating record_professor_rating(PostId post, Grade grade, std::string reply);

  ExpiryResult expire_assignments(Instant now);

  std::optional<RatingPrompt> rating_prompt(AssignmentId assignment) const;

  Grade final_peer_grade(PostId post) const;
  VisibilityView visibility(PostId post, const Viewer& viewer, Instant now) const;

  const Post& post(PostId id) const;
  const std::vector<Post>& posts() const noexcept { return posts_; }
  const std::vector<PeerAssessment>& assessments() const noexcept { return assessments_; }
  const std::map<PostId, ProfessorRating>& professor_ratings() const noexcept { return professor_; }
  std::vector<TrainingStatus> training_statuses() const;
  std::size_t completed_count(PostId post) const;

 private:
  std::vector<const PeerAssessment*> assessments_for(PostId post) const;

  WorkflowConfig config_;
  SociometryDB db_;
  AssignmentEngine engine_;
  std::map<SkillId, TrainingPage> pages_;
  std::map<std::pair<StudentId, SkillId>, TrainingStatus> training_;
  std::vector<Post> posts_;
  std::vector<PeerAssessment> assessments_;
  std::map<PostId, std::vector<std::size_t>> assessments_by_post_;
  std::map<PostId, ProfessorRating> professor_;
};

/// Flattens the workflow state into the source tables and derived records.
Dataset build_dataset(const Workflow& workflow);

}  // namespace peergrade
