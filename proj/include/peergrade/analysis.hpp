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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "peergrade/dataset.hpp"
#include "peergrade/stats/estimators.hpp"

namespace peergrade {

/// Posts with at least this many assessments enter the accuracy
/// descriptives, the difference table and the relationship report.
inline constexpr std::uint32_t kAnalysisMinCount = 3;

struct FairnessRow {
  std::uint32_t count = 0;
  std::size_t posts = 0;
  stats::IccResult icc;
  stats::Reliability single_band = stats::Reliability::Poor;
  stats::Reliability average_band = stats::Reliability::Poor;
};

/// ICC(1) over posts with exactly c assessments, c in `counts`. Columns follow
/// submission order. Counts with fewer than two posts, or with a degenerate
/// matrix, are left out.
std::vector<FairnessRow> fairness_by_count(const Dataset& ds, double alpha_level = 0.05,
                                           std::vector<std::uint32_t> counts = {2, 3, 4, 5});

struct AccuracyRow {
  std::uint32_t min_count = 0;
  stats::SpearmanResult spearman;
};

/// Spearman between professor rating and unrounded mean peer grade over posts
/// with at least m assessments, m = 1..5. Rows that cannot be computed (fewer
/// than three posts, constant input) are left out.
std::vector<AccuracyRow> accuracy_by_min_count(const Dataset& ds);

struct Descriptives {
  std::uint32_t min_count = kAnalysisMinCount;
  std::size_t posts = 0;
  stats::GroupStats professor;
  stats::GroupStats final_peer;
  stats::GroupStats mean_peer;
  std::optional<stats::SpearmanResult> final_vs_professor;
  std::optional<stats::SpearmanResult> mean_vs_professor;
};

/// Post-level means and SDs, restricted to posts with a professor rating and
/// at least `min_count` assessments.
Descriptives descriptives(const Dataset& ds, std::uint32_t min_count = kAnalysisMinCount);

/// Counts of (final peer grade - professor rating) by professor rating.
struct DifferenceTable {
  static constexpr int kMinDiff = -5;
  static constexpr int kMaxDiff = 5;
  static constexpr std::size_t kColumns = kMaxDiff - kMinDiff + 1;

  std::uint32_t min_count = kAnalysisMinCount;
  std::array<std::array<std::size_t, kColumns>, 6> cells{};
  std::array<std::size_t, 6> row_totals{};
  std::array<std::size_t, kColumns> column_totals{};
  std::size_t total = 0;

  std::size_t at(int rating, int diff) const { return cells.at(rating).at(diff - kMinDiff); }
  /// Row percentage; 0 for an empty row.
  double row_percent(int rating, int diff) const;
  /// Share of all posts in the column.
  double column_percent(int diff) const;
};

DifferenceTable grade_difference_table(const Dataset& ds, std::uint32_t min_count = kAnalysisMinCount);

struct RelationshipGroup {
  RelationshipClass cls = RelationshipClass::Neutral;
  /// peer grade - final peer grade
  stats::GroupStats vs_final;
  /// peer grade - professor rating (records with a rating only)
  stats::GroupStats vs_professor;
};

struct MetricTests {
  stats::WelchResult welch;
  std::vector<stats::GamesHowellPair> games_howell;
};

struct RelationshipReport {
  std::uint32_t min_count = kAnalysisMinCount;
  std::size_t records_total = 0;
  std::size_t records_known = 0;
  std::size_t records_in_scope = 0;
  /// Dislike, Neutral, Like; classes with no records are left out.
  std::vector<RelationshipGroup> groups;
  std::optional<MetricTests> vs_final;
  std::optional<MetricTests> vs_professor;
};

/// Per-class descriptives of both difference metrics over posts with at least
/// `min_count` assessments, plus Welch ANOVA and Games-Howell on each metric.
/// Unknown relationships are excluded. Throws TooFewGroups unless at least two
/// classes have two or more records.
RelationshipReport relationship_bias_report(const Dataset& ds, double alpha_level = 0.05,
                                            std::uint32_t min_count = kAnalysisMinCount);

enum class Section : std::uint8_t {
  Fairness = 1,
  Accuracy = 2,
  Descriptives = 4,
  DifferenceTable = 8,
  Relationships = 16,
  Cronbach = 32,
};

using SectionSet = std::uint8_t;
inline constexpr SectionSet kAllSections = 63;

inline constexpr bool has(SectionSet set, Section s) noexcept {
  return (set & static_cast<std::uint8_t>(s)) != 0;
}

/// Parses "all" or a comma list of fairness, accuracy, descriptives,
/// difference, relationships, cronbach.
SectionSet parse_sections(std::string_view text);
std::string sections_to_string(SectionSet set);

struct AnalysisOptions {
  SectionSet sections = kAllSections & ~static_cast<std::uint8_t>(Section::Cronbach);
  double alpha_level = 0.05;
  /// Respondents x items, required for the cronbach section.
  std::optional<std::vector<std::vector<double>>> items;
};

struct CronbachSummary {
  double alpha = 0.0;
  std::size_t respondents = 0;
  std::size_t items = 0;
};

struct AnalysisReport {
  SectionSet sections = 0;
  double alpha_level = 0.05;
  std::size_t records = 0;
  std::size_t posts = 0;

  std::vector<FairnessRow> fairness;
  std::vector<AccuracyRow> accuracy;
  std::optional<Descriptives> descriptives;
  std::optional<DifferenceTable> difference_table;
  std::optional<RelationshipReport> relationships;
  std::optional<CronbachSummary> cronbach;
  /// Plot-ready per-post series: professor rating vs peer grades.
  std::vector<PostSummary> series;
};

/// Throws EmptyDataset when there are no records and InvalidArgument when the
/// cronbach section is requested without items.
AnalysisReport run_analysis(const Dataset& ds, const AnalysisOptions& options);

}  // namespace peergrade
