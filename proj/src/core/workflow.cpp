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

#include "peergrade/workflow.hpp"

#include <algorithm>
#include <string>

#include "peergrade/error.hpp"

namespace peergrade {
namespace {

std::string post_text(PostId id) { return "post " + std::to_string(id.value); }

}  // namespace

Workflow::Workflow(WorkflowConfig config, SociometryDB db)
    : config_(std::move(config)), db_(std::move(db)), engine_(config_.assignment) {
  if (config_.reveal_threshold == 0) fail(ErrorCode::InvalidConfig, "reveal threshold must be >= 1");
}

void Workflow::add_training_page(TrainingPage page) {
  if (page.samples.size() < 2) {
    fail(ErrorCode::InvalidArgument, "a training page needs at least two samples");
  }
  pages_[page.skill] = std::move(page);
}

TrainingStatus Workflow::complete_training(StudentId student, SkillId skill,
                                           std::span<const TrainingAnswer> answers) {
  auto pit = pages_.find(skill);
  if (pit == pages_.end()) fail(ErrorCode::UnknownSkill, "skill " + std::to_string(skill.value));
  if (!db_.is_known(student)) fail(ErrorCode::UnknownStudent, "student " + std::to_string(student.value));

  bool all_match = true;
  for (const TrainingSample& sample : pit->second.samples) {
    auto ans = std::find_if(answers.begin(), answers.end(),
                            [&](const TrainingAnswer& a) { return a.sample_id == sample.sample_id; });
    if (ans == answers.end()) {
      fail(ErrorCode::MissingAnswers, "no answer for sample " + std::to_string(sample.sample_id));
    }
    all_match &= ans->grade == sample.faculty_grade;
  }

  auto& status = training_[{student, skill}];
  status.student = student;
  status.skill = skill;
  ++status.attempts;
  status.completed = status.completed || all_match;
  return status;
}

bool Workflow::is_trained(StudentId student, SkillId skill) const {
  auto it = training_.find({student, skill});
  return it != training_.end() && it->second.completed;
}

const Post& Workflow::post(PostId id) const {
  if (id.value == 0 || id.value > posts_.size()) fail(ErrorCode::UnknownPost, post_text(id));
  return posts_[id.value - 1];
}

SubmitResult Workflow::submit_post(StudentId student, SkillId skill, std::string content_ref,
                                   Instant now, std::optional<PostId> parent) {
  if (!db_.is_enrolled(student)) fail(ErrorCode::UnknownStudent, "student " + std::to_string(student.value));
  if (!pages_.contains(skill)) fail(ErrorCode::UnknownSkill, "skill " + std::to_string(skill.value));
  if (!is_trained(student, skill)) {
    fail(ErrorCode::TrainingIncomplete, "student " + std::to_string(student.value) +
                                            " has not completed training for skill " +
                                            std::to_string(skill.value));
  }

  Post p;
  p.id = PostId{static_cast<std::uint32_t>(posts_.size() + 1)};
  p.author = student;
  p.skill = skill;
  p.parent = parent;
  p.created_at = now;
  p.content_ref = std::move(content_ref);

  SelectionResult drawn;
  if (parent) {
    const Post& original = post(*parent);
    if (original.created_at > now) fail(ErrorCode::NotAResubmission, "parent post is newer");
    drawn = engine_.assign_resubmission(p, original, now, db_);
  } else {
    drawn = engine_.assign_post(p, now, db_);
  }
  posts_.push_back(p);
  return SubmitResult{p, std::move(drawn.assignments), drawn.short_pool};
}

PeerAssessment Workflow::submit_assessment(AssignmentId assignment, Grade grade,
                                           std::string feedback, Instant now) {
  const Assignment& a = engine_.get(assignment);
  if (a.status == AssignmentStatus::Completed) {
    fail(ErrorCode::DuplicateAssessment, "assignment " + std::to_string(assignment.value) +
                                             " was already completed");
  }
  if (a.status == AssignmentStatus::Expired || now > a.deadline) {
    fail(ErrorCode::AssignmentExpired, "assignment " + std::to_string(assignment.value));
  }
  const Post& p = post(a.post);
  if (!is_trained(a.grader, p.skill)) {
    fail(ErrorCode::TrainingIncomplete, "grader " + std::to_string(a.grader.value) +
                                            " has not completed training for skill " +
                                            std::to_string(p.skill.value));
  }
  if (!has_feedback(feedback)) fail(ErrorCode::EmptyFeedback, "feedback is required");

  engine_.mark_completed(assignment);
  PeerAssessment pa{assignment, a.post, a.grader, grade, std::move(feedback), now};
  assessments_by_post_[pa.post].push_back(assessments_.size());
  assessments_.push_back(pa);
  return assessments_.back();
}

ProfessorRating Workflow::record_professor_rating(PostId post_id, Grade grade, std::string reply) {
  post(post_id);
  if (professor_.contains(post_id)) fail(ErrorCode::DuplicateRating, post_text(post_id));
  ProfessorRating r{post_id, grade, std::move(reply)};
  professor_.emplace(post_id, r);
  return r;
}

ExpiryResult Workflow::expire_assignments(Instant now) { return engine_.expire_assignments(now, db_); }

std::optional<RatingPrompt> Workflow::rating_prompt(AssignmentId assignment) const {
  const Assignment& a = engine_.get(assignment);
  return request_rating_if_unknown(a, post(a.post).author, db_);
}

std::vector<const PeerAssessment*> Workflow::assessments_for(PostId post_id) const {
  std::vector<const PeerAssessment*> out;
  if (auto it = assessments_by_post_.find(post_id); it != assessments_by_post_.end()) {
    for (std::size_t i : it->second) out.push_back(&assessments_[i]);
  }
  return out;
}

std::size_t Workflow::completed_count(PostId post_id) const {
  auto it = assessments_by_post_.find(post_id);
  return it == assessments_by_post_.end() ? 0 : it->second.size();
}

Grade Workflow::final_peer_grade(PostId post_id) const {
  post(post_id);
  std::vector<Grade> grades;
  for (const PeerAssessment* pa : assessments_for(post_id)) grades.push_back(pa->grade);
  if (grades.empty()) fail(ErrorCode::NoAssessments, post_text(post_id));
  return peergrade::final_peer_grade(grades, config_.rounding);
}

VisibilityView Workflow::visibility(PostId post_id, const Viewer& viewer, Instant now) const {
  const Post& p = post(post_id);
  VisibilityView view;
  view.viewer = viewer;
  view.post = post_id;

  const auto done = assessments_for(post_id);
  auto fill = [&](bool individual) {
    view.sees_professor = true;
    view.sees_final_peer_grade = true;
    view.sees_individual_grades = individual;
    if (auto it = professor_.find(post_id); it != professor_.end()) view.professor = it->second;
    if (!done.empty()) view.final_peer_grade = final_peer_grade(post_id);
    if (individual) {
      for (const PeerAssessment* pa : done) view.individual.push_back({pa->grade, pa->feedback});
    }
  };

  if (viewer.is_professor()) {
    fill(true);
    return view;
  }
  if (!db_.is_known(viewer.id())) {
    fail(ErrorCode::UnknownViewer, "student " + std::to_string(viewer.id().value));
  }
  for (AssignmentId id : engine_.for_post(post_id)) {
    const Assignment& a = engine_.get(id);
    if (a.grader == viewer.id() && a.status == AssignmentStatus::Pending && now <= a.deadline) {
      return view;
    }
  }
  if (done.size() < config_.reveal_threshold) return view;
  fill(viewer.id() == p.author);
  return view;
}

std::vector<TrainingStatus> Workflow::training_statuses() const {
  std::vector<TrainingStatus> out;
  for (const auto& [key, status] : training_) out.push_back(status);
  return out;
}

Dataset build_dataset(const Workflow& wf) {
  Dataset ds;
  ds.rounding = wf.config().rounding;
  const SociometryDB& db = wf.sociometry();
  ds.students = db.known_students();
  ds.posts = wf.posts();
  for (const PeerAssessment& pa : wf.assessments()) {
    ds.assessments.push_back({pa.post, pa.grader, pa.grade, pa.feedback, pa.submitted_at});
  }
  for (const auto& [post_id, rating] : wf.professor_ratings()) ds.professor.push_back({post_id, rating.grade});
  ds.nominations = db.all_nominations();
  ds.ratings = db.rating_history();
  for (const TrainingStatus& t : wf.training_statuses()) {
    ds.training.push_back({t.student, t.skill, t.completed, t.attempts});
  }
  for (const Assignment& a : wf.engine().all()) {
    ds.assignments.push_back(
        {a.post, a.grader, a.issued_at, a.deadline, a.status, a.relationship_at_issue});
  }
  ds.buckets = db.buckets();
  derive_records(ds);
  return ds;
}

}  // namespace peergrade
