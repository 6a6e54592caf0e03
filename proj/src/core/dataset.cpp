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

#include "peergrade/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "peergrade/error.hpp"

namespace peergrade {

bool has_feedback(const std::string& text) noexcept {
  return std::any_of(text.begin(), text.end(),
                     [](unsigned char c) { return !std::isspace(c); });
}

Grade final_peer_grade(const std::vector<Grade>& grades, RoundingMode mode) {
  if (grades.empty()) fail(ErrorCode::NoAssessments, "no completed peer assessments");
  double sum = 0.0;
  for (Grade g : grades) sum += g.value();
  const long rounded = round_with(sum / static_cast<double>(grades.size()), mode);
  return Grade(static_cast<int>(std::clamp<long>(rounded, Grade::kMin, Grade::kMax)));
}

void derive_records(Dataset& ds) {
  SociometryDB db(ds.buckets);
  for (StudentId s : ds.students) db.enroll(s);
  for (const NominationSet& n : ds.nominations) {
    std::vector<StudentId> liked(n.liked.begin(), n.liked.end());
    std::vector<StudentId> disliked(n.disliked.begin(), n.disliked.end());
    db.record_nominations(n.owner, liked, disliked, 0);
  }
  for (const PeerRating& r : ds.ratings) db.record_peer_rating(r.rater, r.ratee, r.score, r.timestamp);

  std::map<PostId, const Post*> posts;
  for (const Post& p : ds.posts) posts[p.id] = &p;
  std::map<PostId, Grade> professor;
  for (const ProfessorRow& r : ds.professor) professor[r.post] = r.grade;

  // Kept assessments per post in submission order; ties keep file order.
  std::map<PostId, std::vector<std::size_t>> per_post;
  for (std::size_t i = 0; i < ds.assessments.size(); ++i) {
    if (has_feedback(ds.assessments[i].feedback)) per_post[ds.assessments[i].post].push_back(i);
  }

  ds.records.clear();
  for (auto& [post_id, idxs] : per_post) {
    std::stable_sort(idxs.begin(), idxs.end(), [&](std::size_t a, std::size_t b) {
      return ds.assessments[a].submitted_at < ds.assessments[b].submitted_at;
    });
    auto pit = posts.find(post_id);
    if (pit == posts.end()) {
      fail(ErrorCode::ReferentialIntegrity,
           "assessment references unknown post " + std::to_string(post_id.value));
    }
    const Post& post = *pit->second;
    std::vector<Grade> grades;
    for (std::size_t i : idxs) grades.push_back(ds.assessments[i].grade);
    const double mean =
        std::accumulate(grades.begin(), grades.end(), 0.0,
                        [](double acc, Grade g) { return acc + g.value(); }) /
        static_cast<double>(grades.size());
    const Grade final_grade = final_peer_grade(grades, ds.rounding);
    std::optional<Grade> prof;
    if (auto it = professor.find(post_id); it != professor.end()) prof = it->second;

    std::uint32_t order = 0;
    for (std::size_t i : idxs) {
      const AssessmentRow& row = ds.assessments[i];
      AssessmentRecord rec;
      rec.post = post_id;
      rec.skill = post.skill;
      rec.author = post.author;
      rec.grader = row.grader;
      rec.relationship = db.classify(row.grader, post.author);
      rec.peer_grade = row.grade;
      rec.professor_grade = prof;
      rec.order = order++;
      rec.assessment_count = static_cast<std::uint32_t>(idxs.size());
      rec.final_peer_grade = final_grade;
      rec.mean_peer_grade = mean;
      rec.submitted_at = row.submitted_at;
      ds.records.push_back(rec);
    }
  }
}

std::vector<PostSummary> summarize_posts(const Dataset& ds) {
  std::vector<PostSummary> out;
  for (const AssessmentRecord& r : ds.records) {
    if (out.empty() || out.back().post != r.post) {
      PostSummary s;
      s.post = r.post;
      s.assessment_count = r.assessment_count;
      s.mean_peer_grade = r.mean_peer_grade;
      s.final_peer_grade = r.final_peer_grade;
      s.professor_grade = r.professor_grade;
      out.push_back(std::move(s));
    }
    out.back().grades.push_back(r.peer_grade.value());
  }
  return out;
}

}  // namespace peergrade
