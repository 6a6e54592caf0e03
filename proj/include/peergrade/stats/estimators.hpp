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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace peergrade::stats {

/// Row-major n x k matrix of ratings: one row per subject, one column per rating.
class RatingMatrix {
 public:
  RatingMatrix(std::size_t subjects, std::size_t raters, std::vector<double> values);
  static RatingMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t subjects() const noexcept { return subjects_; }
  std::size_t raters() const noexcept { return raters_; }
  double at(std::size_t subject, std::size_t rater) const { return values_[subject * raters_ + rater]; }
  std::span<const double> row(std::size_t subject) const {
    return {values_.data() + subject * raters_, raters_};
  }

 private:
  std::size_t subjects_;
  std::size_t raters_;
  std::vector<double> values_;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

struct IccResult {
  double single = 0.0;
  double average = 0.0;
  Interval ci_single;
  Interval ci_average;
  double alpha_level = 0.05;
  double msb = 0.0;
  double msw = 0.0;
  double f_value = 0.0;
  double df_between = 0.0;
  double df_within = 0.0;
  std::size_t subjects = 0;
  std::size_t raters = 0;
};

/// One-way random-effects ICC(1), single and average measures, with
/// (1 - alpha_level) confidence intervals from the F distribution.
IccResult icc1(const RatingMatrix& m, double alpha_level = 0.05);

enum class Reliability { Poor, Moderate, Good, Excellent };
std::string_view to_string(Reliability r) noexcept;
/// Bands at .50 / .75 / .90; a boundary value belongs to the higher band.
Reliability interpret_icc(double value);

/// Average ranks (1-based), ties share the mean of their positions.
std::vector<double> mid_ranks(std::span<const double> values);

struct SpearmanResult {
  double rs = 0.0;
  std::size_t n = 0;
  double p_two_tailed = 1.0;
};

SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

struct GroupSample {
  std::string label;
  std::vector<double> values;
};

struct GroupStats {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // n - 1 denominator
  double sd = 0.0;
};

GroupStats describe(std::span<const double> values);

struct WelchResult {
  double f = 0.0;
  double df1 = 0.0;
  double df2 = 0.0;
  double p = 1.0;
};

WelchResult welch_anova(const std::vector<GroupSample>& groups);

struct GamesHowellPair {
  std::string group_a;
  std::string group_b;
  /// mean(b) - mean(a).
  double mean_diff = 0.0;
  double se = 0.0;
  double df = 0.0;
  double q = 0.0;
  double p = 1.0;
  Interval ci;
  double alpha_level = 0.05;
};

/// Every pair (i < j) in input order.
std::vector<GamesHowellPair> games_howell(const std::vector<GroupSample>& groups,
                                          double alpha_level = 0.05);

/// items[r][i]: respondent r's answer to item i.
double cronbach_alpha(const std::vector<std::vector<double>>& items);

}  // namespace peergrade::stats
