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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace peergrade {

/// Seconds since the Unix epoch, UTC.
using Instant = std::int64_t;
using Duration = std::int64_t;

inline constexpr Duration kHour = 3600;
inline constexpr Duration kDay = 24 * kHour;

template <typename Tag>
struct StrongId {
  std::uint32_t value = 0;

  constexpr StrongId() = default;
  constexpr explicit StrongId(std::uint32_t v) : value(v) {}

  friend constexpr auto operator<=>(StrongId, StrongId) = default;
};

struct StudentTag {};
struct PostTag {};
struct SkillTag {};
struct AssignmentTag {};

using StudentId = StrongId<StudentTag>;
using PostId = StrongId<PostTag>;
using SkillId = StrongId<SkillTag>;
using AssignmentId = StrongId<AssignmentTag>;

/// Integer grade on the 0..5 scale shared by peers and professors.
class Grade {
 public:
  static constexpr int kMin = 0;
  static constexpr int kMax = 5;

  constexpr Grade() = default;
  explicit Grade(int value);

  constexpr int value() const noexcept { return value_; }

  friend constexpr auto operator<=>(Grade, Grade) = default;

 private:
  std::uint8_t value_ = 0;
};

enum class RelationshipClass { Like, Dislike, Neutral, Unknown };

std::string_view to_string(RelationshipClass cls) noexcept;
RelationshipClass parse_relationship(std::string_view text);

enum class RoundingMode { HalfAwayFromZero, HalfToEven };

std::string_view to_string(RoundingMode mode) noexcept;
RoundingMode parse_rounding(std::string_view text);

/// Rounds a real number to an integer using the requested tie rule.
long round_with(double value, RoundingMode mode) noexcept;

/// A submission toward a skill. A resubmission links to the post it improves.
struct Post {
  PostId id;
  StudentId author;
  SkillId skill;
  std::optional<PostId> parent;
  Instant created_at = 0;
  std::string content_ref;

  friend bool operator==(const Post&, const Post&) = default;
};

}  // namespace peergrade

template <typename Tag>
struct std::hash<peergrade::StrongId<Tag>> {
  std::size_t operator()(peergrade::StrongId<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
