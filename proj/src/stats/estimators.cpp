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

#include "peergrade/stats/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "peergrade/error.hpp"
#include "peergrade/stats/distributions.hpp"

namespace peergrade::stats {
namespace {

void require_alpha(double alpha_level) {
  if (!(alpha_level > 0.0 && alpha_level < 1.0)) {
    fail(ErrorCode::InvalidAlpha, "alpha level must be in (0, 1)");
  }
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void require_groups(const std::vector<GroupSample>& groups) {
  if (groups.size() < 2) fail(ErrorCode::TooFewGroups, "need at least two groups");
  for (const GroupSample& g : groups) {
    if (g.values.size() < 2) fail(ErrorCode::TooFewGroups, "group '" + g.label + "' has fewer than two values");
    if (describe(g.values).variance <= 0.0) {
      fail(ErrorCode::ZeroVarianceGroup, "group '" + g.label + "' has zero variance");
    }
  }
}

}  // namespace

RatingMatrix::RatingMatrix(std::size_t subjects, std::size_t raters, std::vector<double> values)
    : subjects_(subjects), raters_(raters), values_(std::move(values)) {
  if (subjects_ < 2 || raters_ < 2) {
    fail(ErrorCode::InvalidArgument, "rating matrix needs at least 2 subjects and 2 raters");
  }
  if (values_.size() != subjects_ * raters_) {
    fail(ErrorCode::LengthMismatch, "rating matrix size does not match n x k");
  }
}

RatingMatrix RatingMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) fail(ErrorCode::InvalidArgument, "rating matrix needs rows");
  const std::size_t k = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * k);
  for (const auto& r : rows) {
    if (r.size() != k) fail(ErrorCode::LengthMismatch, "ragged rating matrix");
    values.insert(values.end(), r.begin(), r.end());
  }
  return RatingMatrix(rows.size(), k, std::move(values));
}

IccResult icc1(const RatingMatrix& m, double alpha_level) {
  require_alpha(alpha_level);
  const std::size_t n = m.subjects();
  const std::size_t k = m.raters();
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);

  double grand = 0.0;
  std::vector<double> row_means(n);
  for (std::size_t i = 0; i < n; ++i) {
    row_means[i] = mean_of(m.row(i));
    grand += row_means[i];
  }
  grand /= dn;

  double ss_between = 0.0;
  double ss_within = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ss_between += (row_means[i] - grand) * (row_means[i] - grand);
    for (double x : m.row(i)) ss_within += (x - row_means[i]) * (x - row_means[i]);
  }
  ss_between *= dk;
  if (ss_between + ss_within <= 0.0) fail(ErrorCode::DegenerateMatrix, "all ratings are identical");

  IccResult r;
  r.alpha_level = alpha_level;
  r.subjects = n;
  r.raters = k;
  r.df_between = dn - 1.0;
  r.df_within = dn * (dk - 1.0);
  r.msb = ss_between / r.df_between;
  r.msw = ss_within / r.df_within;

  if (r.msw == 0.0) {
    r.single = r.average = 1.0;
    r.f_value = std::numeric_limits<double>::infinity();
    r.ci_single = r.ci_average = {1.0, 1.0};
    return r;
  }
  r.single = (r.msb - r.msw) / (r.msb + (dk - 1.0) * r.msw);
  r.average = (r.msb - r.msw) / r.msb;
  r.f_value = r.msb / r.msw;

  const double upper_tail = 1.0 - alpha_level / 2.0;
  const double f_low = r.f_value / f_quantile(upper_tail, r.df_between, r.df_within);
  const double f_high = r.f_value * f_quantile(upper_tail, r.df_within, r.df_between);
  r.ci_single = {(f_low - 1.0) / (f_low + dk - 1.0), (f_high - 1.0) / (f_high + dk - 1.0)};
  r.ci_average = {1.0 - 1.0 / f_low, 1.0 - 1.0 / f_high};
  return r;
}

std::string_view to_string(Reliability r) noexcept {
  switch (r) {
    case Reliability::Poor: return "poor";
    case Reliability::Moderate: return "moderate";
    case Reliability::Good: return "good";
    case Reliability::Excellent: return "excellent";
  }
  return "poor";
}

Reliability interpret_icc(double value) {
  if (!(value >= -1.0 && value <= 1.0)) fail(ErrorCode::OutOfRange, "ICC value outside [-1, 1]");
  if (value < 0.50) return Reliability::Poor;
  if (value < 0.75) return Reliability::Moderate;
  if (value < 0.90) return Reliability::Good;
  return Reliability::Excellent;
}

std::vector<double> mid_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share rank mean((i+1)..(j+1)).
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorCode::LengthMismatch, "spearman inputs differ in length");
  if (x.size() < 3) fail(ErrorCode::InvalidArgument, "spearman needs at least 3 pairs");
  const auto rx = mid_ranks(x);
  const auto ry = mid_ranks(y);
  const double mx = mean_of(rx);
  const double my = mean_of(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) fail(ErrorCode::ConstantInput, "spearman input is constant");

  SpearmanResult r;
  r.n = x.size();
  r.rs = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(r.n) - 2.0;
  if (df <= 0.0) {
    r.p_two_tailed = 1.0;
  } else if (std::fabs(r.rs) >= 1.0) {
    r.p_two_tailed = 0.0;
  } else {
    const double t = r.rs * std::sqrt(df / (1.0 - r.rs * r.rs));
    r.p_two_tailed = t_two_tailed_p(t, df);
  }
  return r;
}

GroupStats describe(std::span<const double> values) {
  GroupStats s;
  s.n = values.size();
  if (s.n == 0) return s;
  s.mean = mean_of(values);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(s.n - 1);
    s.sd = std::sqrt(s.variance);
  }
  return s;
}

WelchResult welch_anova(const std::vector<GroupSample>& groups) {
  require_groups(groups);
  const double g = static_cast<double>(groups.size());
  std::vector<GroupStats> stats;
  std::vector<double> w;
  double sum_w = 0.0;
  for (const GroupSample& grp : groups) {
    stats.push_back(describe(grp.values));
    w.push_back(static_cast<double>(stats.back().n) / stats.back().variance);
    sum_w += w.back();
  }
  double weighted_mean = 0.0;
  for (std::size_t j = 0; j < stats.size(); ++j) weighted_mean += w[j] * stats[j].mean;
  weighted_mean /= sum_w;

  double between = 0.0;
  double lambda = 0.0;
  for (std::size_t j = 0; j < stats.size(); ++j) {
    between += w[j] * (stats[j].mean - weighted_mean) * (stats[j].mean - weighted_mean);
    const double share = 1.0 - w[j] / sum_w;
    lambda += share * share / (static_cast<double>(stats[j].n) - 1.0);
  }

  WelchResult r;
  r.df1 = g - 1.0;
  const double numerator = between / (g - 1.0);
  const double denominator = 1.0 + (2.0 * (g - 2.0) / (g * g - 1.0)) * lambda;
  r.f = numerator / denominator;
  r.df2 = (g * g - 1.0) / (3.0 * lambda);
  r.p = f_sf(r.f, r.df1, r.df2);
  return r;
}

std::vector<GamesHowellPair> games_howell(const std::vector<GroupSample>& groups,
                                          double alpha_level) {
  require_alpha(alpha_level);
  require_groups(groups);
  const double g = static_cast<double>(groups.size());
  std::vector<GroupStats> stats;
  for (const GroupSample& grp : groups) stats.push_back(describe(grp.values));

  std::vector<GamesHowellPair> out;
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      const double va = stats[a].variance / static_cast<double>(stats[a].n);
      const double vb = stats[b].variance / static_cast<double>(stats[b].n);
      GamesHowellPair pair;
      pair.group_a = groups[a].label;
      pair.group_b = groups[b].label;
      pair.alpha_level = alpha_level;
      pair.mean_diff = stats[b].mean - stats[a].mean;
      pair.se = std::sqrt(va + vb);
      pair.df = (va + vb) * (va + vb) /
                (va * va / (static_cast<double>(stats[a].n) - 1.0) +
                 vb * vb / (static_cast<double>(stats[b].n) - 1.0));
      pair.q = std::fabs(pair.mean_diff) * std::sqrt(2.0) / pair.se;
      pair.p = std::clamp(1.0 - studentized_range_cdf(pair.q, g, pair.df), 0.0, 1.0);
      const double q_crit = studentized_range_quantile(1.0 - alpha_level, g, pair.df);
      const double half = q_crit * pair.se / std::sqrt(2.0);
      pair.ci = {pair.mean_diff - half, pair.mean_diff + half};
      out.push_back(pair);
    }
  }
  return out;
}

double cronbach_alpha(const std::vector<std::vector<double>>& items) {
  if (items.size() < 2) fail(ErrorCode::DegenerateMatrix, "need at least two respondents");
  const std::size_t k = items.front().size();
  if (k < 2) fail(ErrorCode::DegenerateMatrix, "need at least two items");
  for (const auto& row : items) {
    if (row.size() != k) fail(ErrorCode::LengthMismatch, "ragged item matrix");
  }
  double item_var_sum = 0.0;
  std::vector<double> column(items.size());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < items.size(); ++r) column[r] = items[r][i];
    item_var_sum += describe(column).variance;
  }
  std::vector<double> totals;
  for (const auto& row : items) totals.push_back(std::accumulate(row.begin(), row.end(), 0.0));
  const double total_var = describe(totals).variance;
  if (total_var <= 0.0) fail(ErrorCode::DegenerateMatrix, "respondent totals have zero variance");
  const double dk = static_cast<double>(k);
  return dk / (dk - 1.0) * (1.0 - item_var_sum / total_var);
}

}  // namespace peergrade::stats
