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

#include "peergrade/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "peergrade/error.hpp"

namespace peergrade {
namespace {

using stats::GroupSample;

std::vector<PostSummary> posts_with(const Dataset& ds, std::uint32_t min_count, bool need_professor) {
  std::vector<PostSummary> out;
  for (PostSummary& s : summarize_posts(ds)) {
    if (s.assessment_count < min_count) continue;
    if (need_professor && !s.professor_grade) continue;
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<stats::SpearmanResult> try_spearman(const std::vector<double>& x,
                                                  const std::vector<double>& y) {
  try {
    return stats::spearman(x, y);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConstantInput || e.code() == ErrorCode::InvalidArgument) return std::nullopt;
    throw;
  }
}

bool testable(const GroupSample& g) {
  return g.values.size() >= 2 && stats::describe(g.values).variance > 0.0;
}

std::optional<MetricTests> omnibus(const std::vector<GroupSample>& groups, double alpha_level) {
  std::vector<GroupSample> usable;
  for (const GroupSample& g : groups)
    if (testable(g)) usable.push_back(g);
  if (usable.size() < 2) return std::nullopt;
  return MetricTests{stats::welch_anova(usable), stats::games_howell(usable, alpha_level)};
}

}  // namespace

std::vector<FairnessRow> fairness_by_count(const Dataset& ds, double alpha_level,
                                           std::vector<std::uint32_t> counts) {
  if (!(alpha_level > 0.0 && alpha_level < 1.0)) fail(ErrorCode::InvalidAlpha, "alpha level must be in (0, 1)");
  const auto posts = summarize_posts(ds);
  std::vector<FairnessRow> out;
  for (std::uint32_t c : counts) {
    if (c < 2) continue;
    std::vector<double> values;
    std::size_t n = 0;
    for (const PostSummary& p : posts) {
      if (p.assessment_count != c) continue;
      values.insert(values.end(), p.grades.begin(), p.grades.end());
      ++n;
    }
    if (n < 2) continue;
    FairnessRow row;
    row.count = c;
    row.posts = n;
    try {
      row.icc = stats::icc1(stats::RatingMatrix(n, c, std::move(values)), alpha_level);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DegenerateMatrix) continue;
      throw;
    }
    row.single_band = stats::interpret_icc(std::clamp(row.icc.single, -1.0, 1.0));
    row.average_band = stats::interpret_icc(std::clamp(row.icc.average, -1.0, 1.0));
    out.push_back(row);
  }
  return out;
}

std::vector<AccuracyRow> accuracy_by_min_count(const Dataset& ds) {
  std::vector<AccuracyRow> out;
  for (std::uint32_t m = 1; m <= 5; ++m) {
    std::vector<double> prof, mean;
    for (const PostSummary& p : posts_with(ds, m, true)) {
      prof.push_back(p.professor_grade->value());
      mean.push_back(p.mean_peer_grade);
    }
    if (auto r = try_spearman(prof, mean)) out.push_back({m, *r});
  }
  return out;
}

Descriptives descriptives(const Dataset& ds, std::uint32_t min_count) {
  Descriptives d;
  d.min_count = min_count;
  std::vector<double> prof, fin, mean;
  for (const PostSummary& p : posts_with(ds, min_count, true)) {
    prof.push_back(p.professor_grade->value());
    fin.push_back(p.final_peer_grade.value());
    mean.push_back(p.mean_peer_grade);
  }
  d.posts = prof.size();
  d.professor = stats::describe(prof);
  d.final_peer = stats::describe(fin);
  d.mean_peer = stats::describe(mean);
  d.final_vs_professor = try_spearman(prof, fin);
  d.mean_vs_professor = try_spearman(prof, mean);
  return d;
}

double DifferenceTable::row_percent(int rating, int diff) const {
  const std::size_t n = row_totals.at(rating);
  return n == 0 ? 0.0 : 100.0 * static_cast<double>(at(rating, diff)) / static_cast<double>(n);
}

double DifferenceTable::column_percent(int diff) const {
  return total == 0 ? 0.0
                    : 100.0 * static_cast<double>(column_totals.at(diff - kMinDiff)) /
                          static_cast<double>(total);
}

DifferenceTable grade_difference_table(const Dataset& ds, std::uint32_t min_count) {
  DifferenceTable t;
  t.min_count = min_count;
  for (const PostSummary& p : posts_with(ds, min_count, true)) {
    const int rating = p.professor_grade->value();
    const int diff = p.final_peer_grade.value() - rating;
    const std::size_t col = static_cast<std::size_t>(diff - DifferenceTable::kMinDiff);
    ++t.cells[rating][col];
    ++t.row_totals[rating];
    ++t.column_totals[col];
    ++t.total;
  }
  return t;
}

RelationshipReport relationship_bias_report(const Dataset& ds, double alpha_level,
                                            std::uint32_t min_count) {
  RelationshipReport rep;
  rep.min_count = min_count;
  // Fixed group order so reports do not depend on record order.
  const RelationshipClass order[] = {RelationshipClass::Dislike, RelationshipClass::Neutral,
                                     RelationshipClass::Like};
  std::map<RelationshipClass, GroupSample> vs_final, vs_prof;
  for (const AssessmentRecord& r : ds.records) {
    ++rep.records_total;
    if (r.relationship == RelationshipClass::Unknown) continue;
    ++rep.records_known;
    if (r.assessment_count < min_count) continue;
    ++rep.records_in_scope;
    vs_final[r.relationship].values.push_back(r.peer_grade.value() - r.final_peer_grade.value());
    if (r.professor_grade) {
      vs_prof[r.relationship].values.push_back(r.peer_grade.value() - r.professor_grade->value());
    }
  }

  std::vector<GroupSample> final_groups, prof_groups;
  std::size_t sized = 0;
  for (RelationshipClass cls : order) {
    auto it = vs_final.find(cls);
    if (it == vs_final.end()) continue;
    const std::string label(to_string(cls));
    it->second.label = label;
    RelationshipGroup g;
    g.cls = cls;
    g.vs_final = stats::describe(it->second.values);
    final_groups.push_back(it->second);
    if (auto p = vs_prof.find(cls); p != vs_prof.end()) {
      p->second.label = label;
      g.vs_professor = stats::describe(p->second.values);
      prof_groups.push_back(p->second);
    }
    sized += it->second.values.size() >= 2;
    rep.groups.push_back(g);
  }
  if (sized < 2) {
    fail(ErrorCode::TooFewGroups, "relationship report needs two classes with at least two records");
  }
  rep.vs_final = omnibus(final_groups, alpha_level);
  rep.vs_professor = omnibus(prof_groups, alpha_level);
  return rep;
}

SectionSet parse_sections(std::string_view text) {
  SectionSet out = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view word = text.substr(start, end - start);
    while (!word.empty() && word.front() == ' ') word.remove_prefix(1);
    while (!word.empty() && word.back() == ' ') word.remove_suffix(1);
    if (word == "all") {
      out |= kAllSections & ~static_cast<std::uint8_t>(Section::Cronbach);
    } else if (word == "fairness") {
      out |= static_cast<std::uint8_t>(Section::Fairness);
    } else if (word == "accuracy") {
      out |= static_cast<std::uint8_t>(Section::Accuracy);
    } else if (word == "descriptives") {
      out |= static_cast<std::uint8_t>(Section::Descriptives);
    } else if (word == "difference") {
      out |= static_cast<std::uint8_t>(Section::DifferenceTable);
    } else if (word == "relationships") {
      out |= static_cast<std::uint8_t>(Section::Relationships);
    } else if (word == "cronbach") {
      out |= static_cast<std::uint8_t>(Section::Cronbach);
    } else {
      fail(ErrorCode::InvalidArgument, "unknown analysis section '" + std::string(word) + "'");
    }
    start = end + 1;
  }
  if (out == 0) fail(ErrorCode::InvalidArgument, "no analysis section selected");
  return out;
}

std::string sections_to_string(SectionSet set) {
  static constexpr std::pair<Section, const char*> names[] = {
      {Section::Fairness, "fairness"},         {Section::Accuracy, "accuracy"},
      {Section::Descriptives, "descriptives"}, {Section::DifferenceTable, "difference"},
      {Section::Relationships, "relationships"}, {Section::Cronbach, "cronbach"},
  };
  std::string out;
  for (const auto& [s, name] : names) {
    if (!has(set, s)) continue;
    if (!out.empty()) out += ',';
    out += name;
  }
  return out;
}

AnalysisReport run_analysis(const Dataset& ds, const AnalysisOptions& options) {
  if (!(options.alpha_level > 0.0 && options.alpha_level < 1.0)) {
    fail(ErrorCode::InvalidAlpha, "alpha level must be in (0, 1)");
  }
  if (options.sections == 0) fail(ErrorCode::InvalidArgument, "no analysis section selected");
  if (has(options.sections, Section::Cronbach) && !options.items) {
    fail(ErrorCode::InvalidArgument, "the cronbach section needs an item matrix");
  }
  AnalysisReport rep;
  rep.sections = options.sections;
  rep.alpha_level = options.alpha_level;
  const bool needs_records = (options.sections & ~static_cast<std::uint8_t>(Section::Cronbach)) != 0;
  if (needs_records && ds.records.empty()) fail(ErrorCode::EmptyDataset, "dataset has no assessment records");
  rep.records = ds.records.size();
  rep.series = summarize_posts(ds);
  rep.posts = rep.series.size();

  if (has(options.sections, Section::Fairness)) rep.fairness = fairness_by_count(ds, options.alpha_level);
  if (has(options.sections, Section::Accuracy)) rep.accuracy = accuracy_by_min_count(ds);
  if (has(options.sections, Section::Descriptives)) rep.descriptives = descriptives(ds);
  if (has(options.sections, Section::DifferenceTable)) rep.difference_table = grade_difference_table(ds);
  if (has(options.sections, Section::Relationships)) {
    rep.relationships = relationship_bias_report(ds, options.alpha_level);
  }
  if (has(options.sections, Section::Cronbach)) {
    const auto& items = *options.items;
    rep.cronbach = CronbachSummary{stats::cronbach_alpha(items), items.size(),
                                   items.empty() ? 0 : items.front().size()};
  }
  return rep;
}

}  // namespace peergrade
