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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "peergrade/dataset.hpp"
#include "peergrade/sociometry.hpp"

namespace peergrade {

/// Latent post quality: a normal truncated to [0, 5].
struct QualityDistribution {
  double mean = 3.2;
  double sd = 1.0;
};

struct SimulationConfig {
  std::uint32_t students = 64;
  std::uint32_t skills = 26;
  /// Poisson mean of posts per (student, skill). Posts after the first in a
  /// pair are resubmissions of the previous one.
  double posts_per_student_rate = 0.51;
  std::size_t min_nominations = kDefaultMinNominations;
  /// Each list gets min_nominations plus a uniform draw in [0, extra].
  std::size_t extra_nominations = 2;

  /// Grade points added for a Like grader; subtracted (as a magnitude) for Dislike.
  double like_bias = 0.0;
  double dislike_bias = 0.0;
  double grader_noise = 0.7;
  double professor_noise = 0.5;
  double participation_prob = 0.85;
  QualityDistribution quality;

  /// Prompted ratings: probability the grader knows the author (else 0),
  /// and the affinity-to-score map clamp(round(center + scale * affinity), 1, 5).
  double acquaintance_prob = 0.95;
  double rating_center = 3.0;
  double rating_scale = 1.0;

  std::size_t reviewers_per_post = 5;
  double window_hours = 48.0;
  bool redraw_expired = true;
  /// Skill s opens at s * skill_spacing_days and takes posts for skill_open_days.
  double skill_spacing_days = 3.5;
  double skill_open_days = 14.0;
  RoundingMode rounding = RoundingMode::HalfAwayFromZero;
  RatingBuckets buckets;

  std::uint64_t seed = 1;

  /// Throws InvalidConfig on out-of-range values.
  void validate() const;
};

/// Grader behaviour: grade = clamp(round(q + bias(rel) + N(0, noise)), 0, 5).
struct GraderModel {
  double like_bias = 0.0;
  /// Magnitude; Dislike graders shift by -dislike_bias.
  double dislike_bias = 0.0;
  double neutral_bias = 0.0;
  double unknown_bias = 0.0;
  double noise = 0.7;

  double bias(RelationshipClass rel) const noexcept;
  static GraderModel from(const SimulationConfig& cfg);
};

Grade grader_response(double true_quality, RelationshipClass rel, const GraderModel& model,
                      std::mt19937_64& rng);

struct Cohort {
  std::vector<StudentId> roster;
  SociometryDB db;
  /// affinity[i][j]: how student i+1 feels about student j+1 (standard normal).
  std::vector<std::vector<double>> affinity;
};

/// Roster 1..N with planted affinities and nominations drawn from them.
/// Throws CohortTooSmall when students < 2 * min_nominations + 1.
Cohort generate_cohort(const SimulationConfig& cfg);

/// Runs one semester through the workflow and returns the resulting dataset.
Dataset simulate_semester(const SimulationConfig& cfg);

}  // namespace peergrade
