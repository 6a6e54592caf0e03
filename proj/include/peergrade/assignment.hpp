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
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "peergrade/sociometry.hpp"
#include "peergrade/types.hpp"

namespace peergrade {

inline constexpr std::size_t kReviewersPerPost = 5;
inline constexpr Duration kAssignmentWindow = 48 * kHour;

enum class AssignmentStatus { Pending, Completed, Expired };

std::string_view to_string(AssignmentStatus status) noexcept;
AssignmentStatus parse_assignment_status(std::string_view text);

struct Assignment {
  AssignmentId id;
  PostId post;
  StudentId grader;
  Instant issued_at = 0;
  Instant deadline = 0;
  AssignmentStatus status = AssignmentStatus::Pending;
  /// Frozen when the assignment is issued.
  RelationshipClass relationship_at_issue = RelationshipClass::Unknown;
  /// Replacement slots are not redrawn again when they expire.
  bool is_replacement = false;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct LoadEntry {
  std::uint32_t pending = 0;
  std::uint32_t issued = 0;
};

class LoadState {
 public:
  LoadEntry get(StudentId student) const;
  void on_issue(StudentId student);
  void on_close(StudentId student);
  const std::map<StudentId, LoadEntry>& entries() const noexcept { return entries_; }

 private:
  std::map<StudentId, LoadEntry> entries_;
};

/// Relative selection weight for a candidate inside its relationship bucket.
using WeightFn = std::function<double(const LoadEntry&)>;

/// 1 / (1 + pending load).
double inverse_pending_weight(const LoadEntry& load) noexcept;

struct SelectionRequest {
  PostId post;
  StudentId author;
  Instant issued_at = 0;
  Duration window = kAssignmentWindow;
  std::size_t slots = kReviewersPerPost;
  /// Graders already holding a live slot on the post, with their frozen class.
  /// They are excluded from the draw and count against the Like/Dislike caps.
  std::vector<std::pair<StudentId, RelationshipClass>> held;
  /// Additional students that must not be drawn (e.g. earlier graders).
  std::vector<StudentId> excluded;
};

struct SelectionResult {
  std::vector<Assignment> assignments;
  /// Set when fewer than the requested slots could be filled.
  bool short_pool = false;
};

/// Draws reviewers for a post: at most one Like and at most one Dislike
/// grader (counting held slots), the rest from Neutral/Unknown. Within each
/// bucket candidates are drawn without replacement with probability
/// proportional to `weight`. Pure: the returned assignments carry id 0 and do
/// not touch `load`. Throws EmptyPool when nobody is eligible.
SelectionResult select_reviewers(const SelectionRequest& request, std::span<const StudentId> roster,
                                 const SociometryDB& db, const LoadState& load,
                                 std::uint64_t seed,
                                 const WeightFn& weight = inverse_pending_weight);

/// Asks the grader to rate the author when nothing is known about the pair.
struct RatingPrompt {
  AssignmentId assignment;
  PostId post;
  StudentId grader;
  StudentId author;
  Instant issued_at = 0;
};

std::optional<RatingPrompt> request_rating_if_unknown(const Assignment& assignment,
                                                      StudentId author, const SociometryDB& db);

struct ExpiryResult {
  std::vector<Assignment> expired;
  std::vector<Assignment> replacements;
};

struct AssignmentConfig {
  std::size_t reviewers_per_post = kReviewersPerPost;
  Duration window = kAssignmentWindow;
  bool redraw_expired = true;
  std::uint64_t seed = 0;
  WeightFn weight = inverse_pending_weight;
};

/// Owns every issued assignment and the per-student load. Issuance and
/// expiry are serialized by the caller.
class AssignmentEngine {
 public:
  explicit AssignmentEngine(AssignmentConfig config = {});

  SelectionResult assign_post(const Post& post, Instant now, const SociometryDB& db);

  /// Reassigns the original post's graders to the resubmission with a fresh
  /// window. Graders who left the roster are replaced from the residual pool.
  SelectionResult assign_resubmission(const Post& new_post, const Post& original_post,
                                      Instant now, const SociometryDB& db);

  /// Expires every Pending assignment whose deadline is before `now`, then
  /// issues one replacement per expired non-replacement slot when enabled.
  ExpiryResult expire_assignments(Instant now, const SociometryDB& db);

  void mark_completed(AssignmentId id);

  const Assignment& get(AssignmentId id) const;
  std::vector<AssignmentId> for_post(PostId post) const;
  const std::vector<Assignment>& all() const noexcept { return assignments_; }
  const LoadState& load() const noexcept { return load_; }
  const AssignmentConfig& config() const noexcept { return config_; }

 private:
  std::vector<Assignment> commit(std::vector<Assignment> drawn, bool replacement);
  std::uint64_t next_seed(PostId post);
  SelectionRequest request_for(PostId post, StudentId author, Instant now, std::size_t slots) const;

  AssignmentConfig config_;
  std::vector<Assignment> assignments_;
  std::map<PostId, std::vector<std::size_t>> by_post_;
  std::map<PostId, StudentId> authors_;
  LoadState load_;
  std::uint64_t draws_ = 0;
};

/// splitmix64 finalizer; used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace peergrade
