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

#include "peergrade/stats/distributions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "peergrade/error.hpp"

namespace {

using namespace peergrade;
using namespace peergrade::stats;

TEST(IncompleteBeta, MatchesBoostOnGrid) {
  for (double a : {0.5, 1.0, 2.5, 10.0, 150.0}) {
    for (double b : {0.5, 1.0, 3.0, 40.0}) {
      for (double x : {0.001, 0.1, 0.35, 0.5, 0.8, 0.999}) {
        const double expected = boost::math::ibeta(a, b, x);
        EXPECT_NEAR(incomplete_beta(a, b, x), expected, 1e-13) << a << " " << b << " " << x;
      }
    }
  }
}

TEST(IncompleteBeta, ComplementKeepsTailPrecision) {
  // Upper tail around 1e-30: the complement must not round to zero.
  const double a = 5.0, b = 5.0, x = 0.999999, y = 1e-6;
  const double expected = boost::math::ibetac(a, b, x);
  EXPECT_NEAR(incomplete_beta(a, b, x, y).upper / expected, 1.0, 1e-9);
}

TEST(TDistribution, SymmetryAtZero) {
  for (double df : {1.0, 2.0, 7.5, 30.0, 1000.0}) EXPECT_EQ(t_cdf(0.0, df), 0.5);
}

TEST(TDistribution, CdfMatchesBoost) {
  for (double df : {1.0, 3.0, 12.0, 200.0}) {
    boost::math::students_t ref(df);
    for (double x : {-6.0, -2.0, -0.3, 0.4, 1.96, 5.0}) {
      EXPECT_NEAR(t_cdf(x, df), boost::math::cdf(ref, x), 1e-13);
      EXPECT_NEAR(t_pdf(x, df), boost::math::pdf(ref, x), 1e-13);
    }
  }
}

TEST(TDistribution, QuantileInvertsCdf) {
  for (double df : {1.0, 4.0, 25.0, 586.0}) {
    for (int i = 1; i < 100; ++i) {
      const double p = i / 100.0;
      EXPECT_NEAR(t_cdf(t_quantile(p, df), df), p, 1e-12);
    }
  }
}

TEST(FDistribution, MedianOfEqualDfsIsOne) {
  for (double d : {1.0, 2.0, 5.0, 40.0, 400.0}) EXPECT_NEAR(f_quantile(0.5, d, d), 1.0, 1e-12);
}

TEST(FDistribution, MatchesBoost) {
  for (auto [d1, d2] : {std::pair{2.0, 412.373}, {1.0, 10.0}, {5.0, 3.0}, {123.0, 246.0}}) {
    boost::math::fisher_f ref(d1, d2);
    for (double x : {0.05, 0.7, 1.0, 3.5, 7.472}) {
      EXPECT_NEAR(f_cdf(x, d1, d2), boost::math::cdf(ref, x), 1e-13);
      EXPECT_NEAR(f_sf(x, d1, d2), boost::math::cdf(boost::math::complement(ref, x)), 1e-13);
    }
    for (double p : {0.025, 0.5, 0.975}) {
      EXPECT_NEAR(f_quantile(p, d1, d2) / boost::math::quantile(ref, p), 1.0, 1e-10);
    }
  }
}

TEST(FDistribution, RejectsBadParameters) {
  EXPECT_THROW(f_quantile(0.0, 2, 3), Error);
  EXPECT_THROW(f_quantile(0.5, -1, 3), Error);
  EXPECT_THROW(t_cdf(0.1, 0.0), Error);
}

// Values from scipy.stats.studentized_range (independent implementation).
TEST(StudentizedRange, MatchesReferenceValues) {
  struct Case { double q, k, df, cdf; };
  const Case cases[] = {
      {3.0, 3, 10, 0.8650165848104374},  {3.5, 3, 20, 0.9441081509182501},
      {2.0, 3, 412.4, 0.6655284301929781}, {4.0, 5, 30, 0.941259346300686},
      {1.5, 4, 5, 0.2744942799335813},   {3.31, 3, 1e4, 0.9495522558721808},
      {2.5, 2, 7, 0.8795714266539058},   {5.0, 6, 2, 0.7639120644545506},
  };
  for (const Case& c : cases) {
    EXPECT_NEAR(studentized_range_cdf(c.q, c.k, c.df), c.cdf, 1e-6) << c.q << " " << c.k << " " << c.df;
  }
}

TEST(StudentizedRange, QuantileMatchesReferenceValues) {
  EXPECT_NEAR(studentized_range_quantile(0.95, 3, 20), 3.577934725220134, 1e-5);
  EXPECT_NEAR(studentized_range_quantile(0.95, 3, 400), 3.326895750141754, 1e-5);
  EXPECT_NEAR(studentized_range_quantile(0.99, 4, 12), 5.501626301057456, 1e-5);
  EXPECT_NEAR(studentized_range_quantile(0.95, 2, 10), 3.151064183329372, 1e-5);
}

TEST(StudentizedRange, TwoGroupIdentityWithT) {
  for (double df : {2.0, 9.0, 50.0, 412.0}) {
    for (double q : {0.2, 1.0, 2.2, 3.7, 6.0}) {
      const double expected = 2.0 * t_cdf(q / std::sqrt(2.0), df) - 1.0;
      EXPECT_NEAR(studentized_range_cdf(q, 2, df), expected, 1e-6);
    }
  }
}

// scipy swaps in the df = inf limit beyond 1e5; ours keeps integrating and
// should approach that limit from below at roughly 1/df.
TEST(StudentizedRange, LargeDfApproachesNormalRange) {
  const double limit = 0.9495966278528972;
  const double at_1e6 = studentized_range_cdf(3.31, 3, 1e6);
  EXPECT_LT(at_1e6, limit);
  EXPECT_NEAR(at_1e6, limit, 1e-6);
}

TEST(StudentizedRange, InfiniteDfUsesNormalRange) {
  const double expected = 2.0 * normal_cdf(2.0 / std::sqrt(2.0)) - 1.0;
  EXPECT_NEAR(studentized_range_cdf(2.0, 2, std::numeric_limits<double>::infinity()), expected, 1e-9);
}

TEST(KolmogorovSmirnov, UniformSampleIsNotRejected) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(500);
  for (double& x : xs) x = u(rng);
  EXPECT_GT(ks_uniform(xs).p, 0.01);
}

TEST(KolmogorovSmirnov, SkewedSampleIsRejected) {
  std::vector<double> xs;
  for (int i = 0; i < 200; ++i) xs.push_back(std::pow((i + 0.5) / 200.0, 3.0));
  EXPECT_LT(ks_uniform(xs).p, 1e-6);
}

TEST(KolmogorovSmirnov, SurvivalBranchesAgreeAtSeam) {
  // scipy.special.kolmogorov
  EXPECT_NEAR(kolmogorov_sf(1.1799), 0.12351204971188676, 1e-12);
  EXPECT_NEAR(kolmogorov_sf(1.1801), 0.12339559161939295, 1e-12);
  EXPECT_NEAR(kolmogorov_sf(1.36), 0.049485876755377876, 1e-12);
}

}  // namespace
