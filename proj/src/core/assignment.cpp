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

#include "peergrade/assignment.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "peergrade/error.hpp"

namespace peergrade {

std::string_view to_string(AssignmentStatus status) noexcept {
  switch (status) {
    case AssignmentStatus::Pending: return "pending";
    case AssignmentStatus::Completed: return "completed";
    case AssignmentStatus::Expired: return "expired";
  }
  return "pending";
}

AssignmentStatus parse_assignment_status(std::string_view text) {
  if (text == "pending") return AssignmentStatus::Pending;
  if (text == "completed") return AssignmentStatus::Completed;
  if (text == "expired") return AssignmentStatus::Expired;
  fail(ErrorCode::ParseError, "unknown assignment status '" + std::string(text) + "'");
}

LoadEntry LoadState::get(StudentId student) const {
  auto it = entries_.find(student);
  return it == entries_.end() ? LoadEntry{} : it->second;
}

void LoadState::on_issue(StudentId student) {
  auto& e = entries_[student];
  ++e.pending;
  ++e.issued;
}

void LoadState::on_close(StudentId student) {
  auto& e = entries_[student];
  if (e.pending > 0) --e.pending;
}

double inverse_pending_weight(const LoadEntry& load) noexcept {
  return 1.0 / (1.0 + static_cast<double>(load.pending));
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

void draw_from(std::vector<StudentId>& bucket, std::size_t count, const LoadState& load,
               const WeightFn& weight, std::mt19937_64& rng, std::vector<StudentId>& out) {
  while (count > 0 && !bucket.empty()) {
    std::vector<double> weights;
    weights.reserve(bucket.size());
    for (StudentId s : bucket) weights.push_back(weight(load.get(s)));
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    const std::size_t idx = pick(rng);
    out.push_back(bucket[idx]);
    bucket.erase(bucket.begin() + static_cast<std::ptrdiff_t>(idx));
    --count;
  }
}

}  // namespace

SelectionResult select_reviewers(const SelectionRequest& request, std::span<const StudentId> roster,
                                 const SociometryDB& db, const LoadState& load,
                                 std::uint64_t seed, const WeightFn& weight) {
  std::set<StudentId> blocked(request.excluded.begin(), request.excluded.end());
  blocked.insert(request.author);
  bool like_held = false;
  bool dislike_held = false;
  for (const auto& [grader, cls] : request.held) {
    blocked.insert(grader);
    like_held |= cls == RelationshipClass::Like;
    dislike_held |= cls == RelationshipClass::Dislike;
  }

  std::vector<StudentId> sorted(roster.begin(), roster.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<StudentId> likes, dislikes, others;
  for (StudentId s : sorted) {
    if (blocked.contains(s) || !db.is_enrolled(s)) continue;
    switch (db.classify(s, request.author)) {
      case RelationshipClass::Like: likes.push_back(s); break;
      case RelationshipClass::Dislike: dislikes.push_back(s); break;
      default: others.push_back(s); break;
    }
  }

  const std::size_t like_quota = like_held ? 0 : std::min<std::size_t>(1, likes.size());
  const std::size_t dislike_quota = dislike_held ? 0 : std::min<std::size_t>(1, dislikes.size());
  const std::size_t eligible = like_quota + dislike_quota + others.size();
  if (request.slots > 0 && eligible == 0) {
    fail(ErrorCode::EmptyPool, "no eligible reviewers for post " + std::to_string(request.post.value));
  }

  std::mt19937_64 rng(seed);
  std::vector<StudentId> chosen;
  std::size_t remaining = request.slots;
  draw_from(likes, std::min(like_quota, remaining), load, weight, rng, chosen);
  remaining = request.slots - chosen.size();
  draw_from(dislikes, std::min(dislike_quota, remaining), load, weight, rng, chosen);
  remaining = request.slots - chosen.size();
  draw_from(others, remaining, load, weight, rng, chosen);

  SelectionResult result;
  result.short_pool = chosen.size() < request.slots;
  for (StudentId grader : chosen) {
    Assignment a;
    a.post = request.post;
    a.grader = grader;
    a.issued_at = request.issued_at;
    a.deadline = request.issued_at + request.window;
    a.status = AssignmentStatus::Pending;
    a.relationship_at_issue = db.classify(grader, request.author);
    result.assignments.push_back(a);
  }
  return result;
}

std::optional<RatingPrompt> request_rating_if_unknown(const Assignment& assignment,
                                                      StudentId author, const SociometryDB& db) {
  if (db.has_nomination_for(assignment.grader, author)) return std::nullopt;
  if (db.classify(assignment.grader, author) != RelationshipClass::Unknown) return std::nullopt;
  return RatingPrompt{assignment.id, assignment.post, assignment.grader, author,
                      assignment.issued_at};
}

AssignmentEngine::AssignmentEngine(AssignmentConfig config) : config_(std::move(config)) {
  if (config_.window <= 0) fail(ErrorCode::InvalidConfig, "assignment window must be positive");
  if (!config_.weight) config_.weight = inverse_pending_weight;
}

std::uint64_t AssignmentEngine::next_seed(PostId post) {
  return mix_seed(mix_seed(config_.seed, post.value), draws_++);
}

SelectionRequest AssignmentEngine::request_for(PostId post, StudentId author, Instant now,
                                               std::size_t slots) const {
  SelectionRequest req;
  req.post = post;
  req.author = author;
  req.issued_at = now;
  req.window = config_.window;
  req.slots = slots;
  if (auto it = by_post_.find(post); it != by_post_.end()) {
    for (std::size_t idx : it->second) {
      const Assignment& a = assignments_[idx];
      req.excluded.push_back(a.grader);
      if (a.status != AssignmentStatus::Expired) req.held.emplace_back(a.grader, a.relationship_at_issue);
    }
  }
  return req;
}

std::vector<Assignment> AssignmentEngine::commit(std::vector<Assignment> drawn, bool replacement) {
  for (Assignment& a : drawn) {
    a.id = AssignmentId{static_cast<std::uint32_t>(assignments_.size() + 1)};
    a.is_replacement = replacement;
    by_post_[a.post].push_back(assignments_.size());
    load_.on_issue(a.grader);
    assignments_.push_back(a);
  }
  return drawn;
}

SelectionResult AssignmentEngine::assign_post(const Post& post, Instant now, const SociometryDB& db) {
  authors_[post.id] = post.author;
  const auto roster = db.roster();
  SelectionResult result =
      select_reviewers(request_for(post.id, post.author, now, config_.reviewers_per_post), roster,
                       db, load_, next_seed(post.id), config_.weight);
  result.assignments = commit(std::move(result.assignments), false);
  return result;
}

SelectionResult AssignmentEngine::assign_resubmission(const Post& new_post,
                                                      const Post& original_post, Instant now,
                                                      const SociometryDB& db) {
  if (!new_post.parent || *new_post.parent != original_post.id ||
      new_post.author != original_post.author || new_post.skill != original_post.skill) {
    fail(ErrorCode::NotAResubmission, "post " + std::to_string(new_post.id.value) +
                                          " is not a resubmission of post " +
                                          std::to_string(original_post.id.value));
  }
  authors_[new_post.id] = new_post.author;

  std::vector<Assignment> reused;
  std::vector<StudentId> original_graders;
  if (auto it = by_post_.find(original_post.id); it != by_post_.end()) {
    for (std::size_t idx : it->second) {
      const Assignment& old = assignments_[idx];
      original_graders.push_back(old.grader);
      if (old.status == AssignmentStatus::Expired || !db.is_enrolled(old.grader)) continue;
      Assignment a;
      a.post = new_post.id;
      a.grader = old.grader;
      a.issued_at = now;
      a.deadline = now + config_.window;
      a.relationship_at_issue = old.relationship_at_issue;
      reused.push_back(a);
    }
  }
  std::size_t dropped = 0;
  if (auto it = by_post_.find(original_post.id); it != by_post_.end()) {
    for (std::size_t idx : it->second) {
      const Assignment& old = assignments_[idx];
      if (old.status != AssignmentStatus::Expired && !db.is_enrolled(old.grader)) ++dropped;
    }
  }

  SelectionResult result;
  result.assignments = commit(std::move(reused), false);
  if (dropped > 0) {
    SelectionRequest req = request_for(new_post.id, new_post.author, now, dropped);
    req.excluded.insert(req.excluded.end(), original_graders.begin(), original_graders.end());
    const auto roster = db.roster();
    SelectionResult extra;
    try {
      extra = select_reviewers(req, roster, db, load_, next_seed(new_post.id), config_.weight);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyPool) throw;
      extra.short_pool = true;
    }
    result.short_pool = extra.short_pool;
    auto added = commit(std::move(extra.assignments), false);
    result.assignments.insert(result.assignments.end(), added.begin(), added.end());
  }
  return result;
}

ExpiryResult AssignmentEngine::expire_assignments(Instant now, const SociometryDB& db) {
  ExpiryResult result;
  for (Assignment& a : assignments_) {
    if (a.status == AssignmentStatus::Pending && a.deadline < now) {
      a.status = AssignmentStatus::Expired;
      load_.on_close(a.grader);
      result.expired.push_back(a);
    }
  }
  if (!config_.redraw_expired) return result;

  const auto roster = db.roster();
  for (const Assignment& gone : result.expired) {
    if (gone.is_replacement) continue;
    const StudentId author = authors_.at(gone.post);
    SelectionRequest req = request_for(gone.post, author, now, 1);
    SelectionResult drawn;
    try {
      drawn = select_reviewers(req, roster, db, load_, next_seed(gone.post), config_.weight);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyPool) throw;
      continue;
    }
    auto added = commit(std::move(drawn.assignments), true);
    result.replacements.insert(result.replacements.end(), added.begin(), added.end());
  }
  return result;
}

void AssignmentEngine::mark_completed(AssignmentId id) {
  if (id.value == 0 || id.value > assignments_.size()) {
    fail(ErrorCode::UnknownAssignment, "assignment " + std::to_string(id.value));
  }
  Assignment& a = assignments_[id.value - 1];
  if (a.status != AssignmentStatus::Pending) {
    fail(ErrorCode::AssignmentClosed, "assignment " + std::to_string(id.value) + " is not pending");
  }
  a.status = AssignmentStatus::Completed;
  load_.on_close(a.grader);
}

const Assignment& AssignmentEngine::get(AssignmentId id) const {
  if (id.value == 0 || id.value > assignments_.size()) {
    fail(ErrorCode::UnknownAssignment, "assignment " + std::to_string(id.value));
  }
  return assignments_[id.value - 1];
}

std::vector<AssignmentId> AssignmentEngine::for_post(PostId post) const {
  std::vector<AssignmentId> out;
  if (auto it = by_post_.find(post); it != by_post_.end()) {
    for (std::size_t idx : it->second) out.push_back(assignments_[idx].id);
  }
  return out;
}

}  // namespace peergrade
