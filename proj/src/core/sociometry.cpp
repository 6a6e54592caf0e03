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

#include "peergrade/sociometry.hpp"

#include <algorithm>
#include <string>

#include "peergrade/error.hpp"

namespace peergrade {
namespace {

std::string id_text(StudentId id) { return std::to_string(id.value); }

}  // namespace

RelationshipClass RatingBuckets::classify(int score) const noexcept {
  if (score <= 0) return RelationshipClass::Unknown;
  if (score <= dislike_max) return RelationshipClass::Dislike;
  if (score <= neutral_max) return RelationshipClass::Neutral;
  return RelationshipClass::Like;
}

SociometryDB::SociometryDB(RatingBuckets buckets) : buckets_(buckets) {
  if (buckets_.dislike_max < 0 || buckets_.neutral_max < buckets_.dislike_max ||
      buckets_.neutral_max > 5) {
    fail(ErrorCode::InvalidConfig, "rating buckets must satisfy 0 <= dislike_max <= neutral_max <= 5");
  }
}

void SociometryDB::enroll(StudentId student) {
  known_.insert(student);
  active_.insert(student);
}

void SociometryDB::withdraw(StudentId student) {
  require_known(student);
  active_.erase(student);
}

bool SociometryDB::is_enrolled(StudentId student) const { return active_.contains(student); }

bool SociometryDB::is_known(StudentId student) const { return known_.contains(student); }

std::vector<StudentId> SociometryDB::roster() const { return {active_.begin(), active_.end()}; }

std::vector<StudentId> SociometryDB::known_students() const { return {known_.begin(), known_.end()}; }

void SociometryDB::require_known(StudentId student) const {
  if (!known_.contains(student)) fail(ErrorCode::UnknownStudent, "student " + id_text(student));
}

const NominationSet& SociometryDB::record_nominations(StudentId owner,
                                                      std::span<const StudentId> liked,
                                                      std::span<const StudentId> disliked,
                                                      std::size_t min_nominations) {
  require_known(owner);
  NominationSet set{owner, {liked.begin(), liked.end()}, {disliked.begin(), disliked.end()}};
  if (set.liked.contains(owner) || set.disliked.contains(owner)) {
    fail(ErrorCode::SelfNomination, "student " + id_text(owner) + " nominated themselves");
  }
  for (StudentId s : set.liked) require_known(s);
  for (StudentId s : set.disliked) require_known(s);
  if (set.liked.size() < min_nominations || set.disliked.size() < min_nominations) {
    fail(ErrorCode::TooFewNominations,
         "student " + id_text(owner) + " needs at least " + std::to_string(min_nominations) +
             " peers per category");
  }
  for (StudentId s : set.liked) {
    if (set.disliked.contains(s)) {
      fail(ErrorCode::OverlappingNominations,
           "student " + id_text(s) + " is both liked and disliked by " + id_text(owner));
    }
  }
  auto [it, inserted] = nominations_.insert_or_assign(owner, std::move(set));
  return it->second;
}

PeerRating SociometryDB::record_peer_rating(StudentId rater, StudentId ratee, int score,
                                            Instant timestamp) {
  if (rater == ratee) fail(ErrorCode::SelfRating, "student " + id_text(rater) + " rated themselves");
  if (score < 0 || score > 5) {
    fail(ErrorCode::ScoreOutOfRange, "rating score " + std::to_string(score) + " outside [0, 5]");
  }
  require_known(rater);
  require_known(ratee);
  PeerRating rating{rater, ratee, score, timestamp};
  latest_[{rater, ratee}] = history_.size();
  history_.push_back(rating);
  return rating;
}

RelationshipClass SociometryDB::classify(StudentId grader, StudentId author) const {
  require_known(grader);
  require_known(author);
  if (auto it = nominations_.find(grader); it != nominations_.end()) {
    if (it->second.liked.contains(author)) return RelationshipClass::Like;
    if (it->second.disliked.contains(author)) return RelationshipClass::Dislike;
  }
  if (auto it = latest_.find({grader, author}); it != latest_.end()) {
    return buckets_.classify(history_[it->second].score);
  }
  return RelationshipClass::Unknown;
}

bool SociometryDB::has_nomination_for(StudentId grader, StudentId author) const {
  auto it = nominations_.find(grader);
  return it != nominations_.end() &&
         (it->second.liked.contains(author) || it->second.disliked.contains(author));
}

const NominationSet* SociometryDB::nominations(StudentId owner) const {
  auto it = nominations_.find(owner);
  return it == nominations_.end() ? nullptr : &it->second;
}

std::optional<PeerRating> SociometryDB::latest_rating(StudentId rater, StudentId ratee) const {
  auto it = latest_.find({rater, ratee});
  if (it == latest_.end()) return std::nullopt;
  return history_[it->second];
}

std::vector<NominationSet> SociometryDB::all_nominations() const {
  std::vector<NominationSet> out;
  out.reserve(nominations_.size());
  for (const auto& [owner, set] : nominations_) out.push_back(set);
  return out;
}

}  // namespace peergrade
