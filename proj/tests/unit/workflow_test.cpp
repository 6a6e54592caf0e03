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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "peergrade/dataset.hpp"
#include "peergrade/error.hpp"

namespace {

using namespace peergrade;

StudentId S(std::uint32_t v) { return StudentId{v}; }
const SkillId kSkill{1};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;  // sentinel: nothing thrown
}

TrainingPage page(SkillId skill = kSkill) {
  return TrainingPage{skill, "contrast, alignment", {{1, Grade(3)}, {2, Grade(5)}}};
}

const std::vector<TrainingAnswer> kRight{{1, Grade(3)}, {2, Grade(5)}};

Workflow make_workflow(std::uint32_t students, bool train_all = true, std::uint64_t seed = 1) {
  WorkflowConfig cfg;
  cfg.assignment.seed = seed;
  Workflow wf(cfg);
  for (std::uint32_t i = 1; i <= students; ++i) wf.sociometry().enroll(S(i));
  wf.add_training_page(page());
  if (train_all) {
    for (std::uint32_t i = 1; i <= students; ++i) wf.complete_training(S(i), kSkill, kRight);
  }
  return wf;
}

TEST(Training, ExactMatchCompletes) {
  auto wf = make_workflow(3, false);
  const std::vector<TrainingAnswer> wrong{{1, Grade(3)}, {2, Grade(4)}};
  auto st = wf.complete_training(S(1), kSkill, wrong);
  EXPECT_FALSE(st.completed);
  EXPECT_EQ(st.attempts, 1u);
  st = wf.complete_training(S(1), kSkill, kRight);
  EXPECT_TRUE(st.completed);
  EXPECT_EQ(st.attempts, 2u);
  // Never reverts.
  st = wf.complete_training(S(1), kSkill, wrong);
  EXPECT_TRUE(st.completed);
  EXPECT_EQ(st.attempts, 3u);
}

TEST(Training, Errors) {
  auto wf = make_workflow(3, false);
  const std::vector<TrainingAnswer> partial{{1, Grade(3)}};
  EXPECT_EQ(code_of([&] { wf.complete_training(S(1), kSkill, partial); }), ErrorCode::MissingAnswers);
  EXPECT_EQ(code_of([&] { wf.complete_training(S(1), SkillId{9}, kRight); }), ErrorCode::UnknownSkill);
  EXPECT_THROW(wf.add_training_page(TrainingPage{SkillId{2}, "x", {{1, Grade(1)}}}), Error);
}

TEST(SubmitPost, TrainedUntrainedAndShortPool) {
  auto wf = make_workflow(10, false);
  EXPECT_EQ(code_of([&] { wf.submit_post(S(1), kSkill, "p", 0); }), ErrorCode::TrainingIncomplete);
  EXPECT_TRUE(wf.posts().empty());
  wf.complete_training(S(1), kSkill, kRight);
  const auto r = wf.submit_post(S(1), kSkill, "p", 0);
  EXPECT_EQ(r.assignments.size(), 5u);
  EXPECT_FALSE(r.short_pool);

  auto small = make_workflow(4);
  const auto s = small.submit_post(S(1), kSkill, "p", 0);
  EXPECT_EQ(s.assignments.size(), 3u);
  EXPECT_TRUE(s.short_pool);
}

TEST(SubmitAssessment, HappyPathAndErrors) {
  auto wf = make_workflow(10);
  const auto r = wf.submit_post(S(1), kSkill, "p", 0);
  const auto& slots = r.assignments;
  const auto pa = wf.submit_assessment(slots[0].id, Grade(4), "solid contrast choices", kHour);
  EXPECT_EQ(pa.grade, Grade(4));
  EXPECT_EQ(wf.engine().get(slots[0].id).status, AssignmentStatus::Completed);

  EXPECT_EQ(code_of([&] { wf.submit_assessment(slots[0].id, Grade(4), "again", kHour); }),
            ErrorCode::DuplicateAssessment);
  EXPECT_EQ(code_of([&] { wf.submit_assessment(slots[1].id, Grade(4), "", kHour); }),
            ErrorCode::EmptyFeedback);
  EXPECT_EQ(code_of([&] { wf.submit_assessment(slots[1].id, Grade(4), "  \n\t", kHour); }),
            ErrorCode::EmptyFeedback);
  EXPECT_EQ(code_of([&] { wf.submit_assessment(slots[1].id, Grade(4), "ok", slots[1].deadline + 1); }),
            ErrorCode::AssignmentExpired);
  // On the deadline itself the slot is still open.
  EXPECT_NO_THROW(wf.submit_assessment(slots[1].id, Grade(2), "ok", slots[1].deadline));
  EXPECT_EQ(code_of([&] { wf.submit_assessment(AssignmentId{999}, Grade(1), "x", 0); }),
            ErrorCode::UnknownAssignment);
  EXPECT_THROW(Grade(6), Error);
}

TEST(ProfessorRating, StoredOnce) {
  auto wf = make_workflow(8);
  const auto r = wf.submit_post(S(1), kSkill, "p", 0);
  wf.record_professor_rating(r.post.id, Grade(3), "nice");
  EXPECT_EQ(code_of([&] { wf.record_professor_rating(r.post.id, Grade(2), "again"); }),
            ErrorCode::DuplicateRating);
  EXPECT_EQ(code_of([&] { wf.record_professor_rating(PostId{42}, Grade(2), "?"); }), ErrorCode::UnknownPost);
}

TEST(FinalPeerGrade, ExamplesAndRounding) {
  const std::vector<Grade> a{Grade(3), Grade(4), Grade(4)};
  EXPECT_EQ(final_peer_grade(a, RoundingMode::HalfAwayFromZero), Grade(4));
  const std::vector<Grade> b{Grade(3), Grade(4)};
  EXPECT_EQ(final_peer_grade(b, RoundingMode::HalfAwayFromZero), Grade(4));
  EXPECT_EQ(final_peer_grade(b, RoundingMode::HalfToEven), Grade(4));
  const std::vector<Grade> c{Grade(2), Grade(3)};
  EXPECT_EQ(final_peer_grade(c, RoundingMode::HalfAwayFromZero), Grade(3));
  EXPECT_EQ(final_peer_grade(c, RoundingMode::HalfToEven), Grade(2));
  EXPECT_EQ(code_of([] { final_peer_grade(std::vector<Grade>{}, RoundingMode::HalfAwayFromZero); }),
            ErrorCode::NoAssessments);
}

TEST(FinalPeerGrade, IdentityPermutationAndBounds) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> g(0, 5), len(1, 5);
  for (int v = 0; v <= 5; ++v) {
    const std::vector<Grade> one{Grade(v)};
    EXPECT_EQ(final_peer_grade(one, RoundingMode::HalfAwayFromZero), Grade(v));
  }
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Grade> grades;
    for (int i = len(rng); i > 0; --i) grades.push_back(Grade(g(rng)));
    const Grade f = final_peer_grade(grades, RoundingMode::HalfAwayFromZero);
    const auto [lo, hi] = std::minmax_element(grades.begin(), grades.end(),
                                              [](Grade x, Grade y) { return x.value() < y.value(); });
    EXPECT_GE(f.value(), lo->value());
    EXPECT_LE(f.value(), hi->value());
    std::shuffle(grades.begin(), grades.end(), rng);
    EXPECT_EQ(final_peer_grade(grades, RoundingMode::HalfAwayFromZero), f);
  }
}

struct Scenario {
  Workflow wf = make_workflow(12);
  SubmitResult post;
  Scenario() { post = wf.submit_post(S(1), kSkill, "p", 0); }
  StudentId outsider() const {
    std::set<StudentId> busy{S(1)};
    for (const auto& a : post.assignments) busy.insert(a.grader);
    for (std::uint32_t i = 2; i <= 12; ++i)
      if (!busy.contains(S(i))) return S(i);
    return S(0);
  }
  void complete(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
      wf.submit_assessment(post.assignments[i].id, Grade(static_cast<int>(2 + i % 3)), "fb", kHour);
  }
};

TEST(Visibility, HiddenBelowThreshold) {
  Scenario s;
  s.wf.record_professor_rating(s.post.post.id, Grade(3), "reply");
  s.complete(2);
  const auto v = s.wf.visibility(s.post.post.id, Viewer::student(s.outsider()), 2 * kHour);
  EXPECT_FALSE(v.sees_professor);
  EXPECT_FALSE(v.sees_final_peer_grade);
  EXPECT_FALSE(v.professor.has_value());
  const auto author = s.wf.visibility(s.post.post.id, Viewer::student(S(1)), 2 * kHour);
  EXPECT_FALSE(author.sees_individual_grades);
  const auto prof = s.wf.visibility(s.post.post.id, Viewer::professor(), 2 * kHour);
  EXPECT_TRUE(prof.sees_professor);
  EXPECT_EQ(prof.individual.size(), 2u);
}

TEST(Visibility, AuthorAndPendingGraderAtThreshold) {
  Scenario s;
  s.wf.record_professor_rating(s.post.post.id, Grade(3), "reply");
  s.complete(3);
  const auto author = s.wf.visibility(s.post.post.id, Viewer::student(S(1)), 2 * kHour);
  EXPECT_TRUE(author.sees_individual_grades);
  EXPECT_EQ(author.individual.size(), 3u);
  EXPECT_FALSE(author.grader_identities_visible);
  const auto outsider = s.wf.visibility(s.post.post.id, Viewer::student(s.outsider()), 2 * kHour);
  EXPECT_TRUE(outsider.sees_professor);
  EXPECT_TRUE(outsider.sees_final_peer_grade);
  EXPECT_FALSE(outsider.sees_individual_grades);
  EXPECT_TRUE(outsider.individual.empty());

  const StudentId pending = s.post.assignments[4].grader;
  const auto live = s.wf.visibility(s.post.post.id, Viewer::student(pending), 2 * kHour);
  EXPECT_FALSE(live.sees_professor);
  EXPECT_FALSE(live.sees_final_peer_grade);
  // Once the slot closes the grader sees the post like everyone else.
  s.wf.submit_assessment(s.post.assignments[4].id, Grade(4), "late but fine", 3 * kHour);
  EXPECT_TRUE(s.wf.visibility(s.post.post.id, Viewer::student(pending), 3 * kHour).sees_professor);

  EXPECT_EQ(code_of([&] { s.wf.visibility(s.post.post.id, Viewer::student(S(99)), 0); }),
            ErrorCode::UnknownViewer);
}

// Randomized walk over the public operations. A shadow model tracks who is
// trained; every successful action must have had a trained actor, and reveal
// for uninvolved students is monotone.
TEST(WorkflowProperties, GateSoundnessAndMonotoneReveal) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(seed);
    const std::uint32_t n = 14;
    Workflow wf = make_workflow(n, false, seed);
    wf.add_training_page(page(SkillId{2}));
    std::set<std::pair<StudentId, SkillId>> trained;
    std::uniform_int_distribution<std::uint32_t> pick_student(1, n);
    std::uniform_int_distribution<int> pick_op(0, 9), pick_grade(0, 5);
    std::map<std::pair<PostId, StudentId>, bool> revealed;
    Instant now = 0;

    for (int step = 0; step < 300; ++step) {
      now += kHour * (1 + pick_op(rng) % 3);
      const int op = pick_op(rng);
      const StudentId s = S(pick_student(rng));
      const SkillId skill{1 + static_cast<std::uint32_t>(pick_op(rng) % 2)};
      if (op <= 1) {
        const bool right = pick_op(rng) < 7;
        const std::vector<TrainingAnswer> ans{{1, Grade(3)}, {2, Grade(right ? 5 : 1)}};
        if (wf.complete_training(s, skill, ans).completed) trained.insert({s, skill});
      } else if (op <= 3) {
        try {
          wf.submit_post(s, skill, "x", now);
          EXPECT_TRUE(trained.contains({s, skill}));
        } catch (const Error& e) {
          if (e.code() == ErrorCode::EmptyPool) continue;
          EXPECT_EQ(e.code(), ErrorCode::TrainingIncomplete);
          EXPECT_FALSE(trained.contains({s, skill}));
        }
      } else if (op <= 7 && !wf.engine().all().empty()) {
        const auto& all = wf.engine().all();
        const Assignment a = all[rng() % all.size()];
        const SkillId post_skill = wf.post(a.post).skill;
        try {
          wf.submit_assessment(a.id, Grade(pick_grade(rng)), "feedback", now);
          EXPECT_TRUE(trained.contains({a.grader, post_skill}));
        } catch (const Error& e) {
          if (e.code() == ErrorCode::TrainingIncomplete) {
            EXPECT_FALSE(trained.contains({a.grader, post_skill}));
          }
        }
      } else if (op == 8) {
        wf.expire_assignments(now);
      } else if (!wf.posts().empty()) {
        const PostId p = wf.posts()[rng() % wf.posts().size()].id;
        if (!wf.professor_ratings().contains(p)) wf.record_professor_rating(p, Grade(pick_grade(rng)), "r");
      }

      // Reveal bookkeeping for students never assigned to (nor authoring) a post.
      for (const Post& p : wf.posts()) {
        std::set<StudentId> involved{p.author};
        for (AssignmentId id : wf.engine().for_post(p.id)) involved.insert(wf.engine().get(id).grader);
        for (std::uint32_t v = 1; v <= n; ++v) {
          if (involved.contains(S(v))) continue;
          const auto view = wf.visibility(p.id, Viewer::student(S(v)), now);
          EXPECT_FALSE(view.sees_individual_grades);
          EXPECT_EQ(view.sees_professor, wf.completed_count(p.id) >= kRevealThreshold);
          bool& was = revealed[{p.id, S(v)}];
          if (was) EXPECT_TRUE(view.sees_professor);
          was = was || view.sees_professor;
        }
      }
    }
    for (const auto& pa : wf.assessments()) EXPECT_TRUE(trained.contains({pa.grader, wf.post(pa.post).skill}));
    for (const auto& p : wf.posts()) EXPECT_TRUE(trained.contains({p.author, p.skill}));
  }
}

// The view type has no member that could carry a grader id; the flag is a
// compile-time constant and every viewer's entries hold only grade and text.
TEST(WorkflowProperties, AnonymityOfEveryView) {
  static_assert(!VisibilityView::grader_identities_visible);
  Scenario s;
  s.complete(5);
  for (std::uint32_t v = 1; v <= 12; ++v) {
    const auto view = s.wf.visibility(s.post.post.id, Viewer::student(S(v)), 5 * kHour);
    EXPECT_FALSE(view.grader_identities_visible);
    for (const auto& entry : view.individual) EXPECT_EQ(entry.feedback, "fb");
  }
}

TEST(Resubmission, SameGradersFreshWindow) {
  auto wf = make_workflow(12);
  const auto first = wf.submit_post(S(1), kSkill, "v1", 0);
  const auto second = wf.submit_post(S(1), kSkill, "v2", 5 * kHour, first.post.id);
  std::set<StudentId> a, b;
  for (const auto& x : first.assignments) a.insert(x.grader);
  for (const auto& x : second.assignments) b.insert(x.grader);
  EXPECT_EQ(a, b);
  EXPECT_EQ(second.post.parent, first.post.id);
  for (const auto& x : second.assignments) EXPECT_EQ(x.deadline, 53 * kHour);
  EXPECT_EQ(code_of([&] { wf.submit_post(S(2), kSkill, "v2", 6 * kHour, first.post.id); }),
            ErrorCode::NotAResubmission);
}

TEST(BuildDataset, FlattensCompletedAssessments) {
  Scenario s;
  s.complete(3);
  Dataset ds = build_dataset(s.wf);
  ASSERT_EQ(ds.records.size(), 3u);
  for (const auto& r : ds.records) {
    EXPECT_EQ(r.final_peer_grade, ds.records[0].final_peer_grade);
    EXPECT_EQ(r.assessment_count, 3u);
    EXPECT_FALSE(r.professor_grade.has_value());
    EXPECT_EQ(r.author, S(1));
  }
  EXPECT_EQ(ds.records[0].order, 0u);
  EXPECT_EQ(ds.records[2].order, 2u);
  // A legacy row with blank feedback is dropped when records are derived.
  ds.assessments.push_back({s.post.post.id, s.post.assignments[4].grader, Grade(0), "   ", 4 * kHour});
  derive_records(ds);
  EXPECT_EQ(ds.records.size(), 3u);
}

}  // namespace
