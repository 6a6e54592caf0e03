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

namespace peergrade::stats {

/// Regularized incomplete beta I_x(a, b) and its complement, evaluated from
/// (x, y = 1 - x) supplied separately so neither tail loses precision.
struct BetaTails {
  double lower;
  double upper;
};
BetaTails incomplete_beta(double a, double b, double x, double y);
double incomplete_beta(double a, double b, double x);

double normal_cdf(double x) noexcept;
double normal_pdf(double x) noexcept;

double t_cdf(double x, double df);
/// P(|T| >= |t|).
double t_two_tailed_p(double t, double df);
double t_pdf(double x, double df);
double t_quantile(double p, double df);

double f_cdf(double x, double df1, double df2);
/// Upper tail P(F >= x).
double f_sf(double x, double df1, double df2);
double f_pdf(double x, double df1, double df2);
double f_quantile(double p, double df1, double df2);

/// CDF of the studentized range of `groups` standard normals scaled by an
/// independent chi/sqrt(df) variate. Pass infinity for df to drop the scale.
double studentized_range_cdf(double q, double groups, double df);
double studentized_range_quantile(double p, double groups, double df);

struct KsResult {
  double statistic;
  double p;
};
/// One-sample Kolmogorov-Smirnov test of `sample` against Uniform(0, 1).
KsResult ks_uniform(std::span<const double> sample);

/// Asymptotic Kolmogorov survival function Q(lambda).
double kolmogorov_sf(double lambda) noexcept;

inline constexpr int kQuantileIterationCap = 200;

}  // namespace peergrade::stats
