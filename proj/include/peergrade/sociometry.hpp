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
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "peergrade/types.hpp"

namespace peergrade {

inline constexpr std::size_t kDefaultMinNominations = 4;

struct NominationSet {
  StudentId owner;
  std::set<StudentId> liked;
  std::set<StudentId> disliked;

  friend bool operator==(const NominationSet&, const NominationSet&) = default;
};

/// Score 0 records "not acquainted"; it carries no regard information.
struct PeerRating {
  StudentId rater;
  StudentId ratee;
  int score = 0;
  Instant timestamp = 0;

  friend bool operator==(const PeerRating&, const PeerRating&) = default;
};

/// Maps a 0..5 rating to a class. 0 is always Unknown; scores up to
/// dislike_max are Dislike, up to neutral_max Neutral, the rest Like.
struct RatingBuckets {
  int dislike_max = 2;
  int neutral_max = 3;

  RelationshipClass classify(int score) const noexcept;

  friend bool operator==(const RatingBuckets&, const RatingBuckets&) = default;
};

/// Nominations and peer ratings for one cohort. Single writer; concurrent
/// readers are fine between writes.
class SociometryDB {
 public:
  explicit SociometryDB(RatingBuckets buckets = {});

  void enroll(StudentId student);
  /// Removes a student from the active roster. Their history is kept so past
  /// assessments can still be classified.
  void withdraw(StudentId student);
  bool is_enrolled(StudentId student) const;
  bool is_known(StudentId student) const;
  /// Active students in ascending id order.
  std::vector<StudentId> roster() const;
  /// Every student ever enrolled, in ascending id order.
  std::vector<StudentId> known_students() const;

  const NominationSet& record_nominations(StudentId owner, std::span<const StudentId> liked,
                                          std::span<const StudentId> disliked,
                                          std::size_t min_nominations = kDefaultMinNominations);

  /// Later ratings for the same ordered pair supersede earlier ones.
  PeerRating record_peer_rating(StudentId rater, StudentId ratee, int score, Instant timestamp);

  /// Nomination beats rating beats Unknown.
  RelationshipClass classify(StudentId grader, StudentId author) const;

  /// True when the grader's nomination lists mention the author.
  bool has_nomination_for(StudentId grader, StudentId author) const;

  const NominationSet* nominations(StudentId owner) const;
  std::optional<PeerRating> latest_rating(StudentId rater, StudentId ratee) const;

  /// Every nomination set in owner order.
  std::vector<NominationSet> all_nominations() const;
  /// Every rating ever recorded, in recording order.
  const std::vector<PeerRating>& rating_history() const noexcept { return history_; }

  const RatingBuckets& buckets() const noexcept { return buckets_; }

 private:
  void require_known(StudentId student) const;

  RatingBuckets buckets_;
  std::set<StudentId> known_;
  std::set<StudentId> active_;
  std::map<StudentId, NominationSet> nominations_;
  std::map<std::pair<StudentId, StudentId>, std::size_t> latest_;
  std::vector<PeerRating> history_;
};

}  // namespace peergrade
