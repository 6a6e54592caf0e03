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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "peergrade/error.hpp"

namespace peergrade::stats {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kBetaFractionCap = 20000;

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::ParameterOutOfRange, what);
}

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kBetaFractionCap; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  fail(ErrorCode::NonConvergence, "incomplete beta continued fraction");
}

// Newton iteration safeguarded by a bracket [lo, hi] with cdf(lo) <= p <= cdf(hi).
template <typename Cdf, typename Pdf>
double invert_cdf(const Cdf& cdf, const Pdf& pdf, double p, double lo, double hi, double x) {
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int iter = 0; iter < kQuantileIterationCap; ++iter) {
    const double f = cdf(x) - p;
    if (f == 0.0 || std::fabs(f) <= 4.0 * kEps * std::min(p, 1.0 - p)) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double d = pdf(x);
    double next = (d > 0.0 && std::isfinite(d)) ? x - f / d : lo - 1.0;
    if (!(next > lo && next < hi) || iter > 100) next = 0.5 * (lo + hi);
    const double scale = std::max(std::fabs(next), 1e-290);
    if (std::fabs(next - x) <= 8.0 * kEps * scale || (hi - lo) <= 8.0 * kEps * scale) return next;
    x = next;
  }
  fail(ErrorCode::NonConvergence, "quantile inversion exceeded iteration cap");
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

double normal_sf(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

}  // namespace

BetaTails incomplete_beta(double a, double b, double x, double y) {
  require(a > 0.0 && b > 0.0, "incomplete beta needs a > 0 and b > 0");
  require(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0, "incomplete beta needs x in [0, 1]");
  if (x == 0.0) return {0.0, 1.0};
  if (y == 0.0) return {1.0, 0.0};
  const double front = std::exp(a * std::log(x) + b * std::log(y) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    const double lower = std::clamp(front * beta_fraction(a, b, x) / a, 0.0, 1.0);
    return {lower, 1.0 - lower};
  }
  const double upper = std::clamp(front * beta_fraction(b, a, y) / b, 0.0, 1.0);
  return {1.0 - upper, upper};
}

double incomplete_beta(double a, double b, double x) { return incomplete_beta(a, b, x, 1.0 - x).lower; }

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) noexcept { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double t_two_tailed_p(double t, double df) {
  require(df > 0.0, "t distribution needs df > 0");
  if (std::isnan(t)) fail(ErrorCode::ParameterOutOfRange, "t statistic is NaN");
  if (std::isinf(df)) return 2.0 * normal_sf(std::fabs(t));
  if (std::isinf(t)) return 0.0;
  const double t2 = t * t;
  return incomplete_beta(0.5 * df, 0.5, df / (df + t2), t2 / (df + t2)).lower;
}

double t_cdf(double x, double df) {
  require(df > 0.0, "t distribution needs df > 0");
  if (x == 0.0) return 0.5;
  const double tail = 0.5 * t_two_tailed_p(x, df);
  return x > 0.0 ? 1.0 - tail : tail;
}

double t_pdf(double x, double df) {
  require(df > 0.0, "t distribution needs df > 0");
  if (std::isinf(df)) return normal_pdf(x);
  return std::exp(std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                  0.5 * std::log(df * std::numbers::pi) -
                  0.5 * (df + 1.0) * std::log1p(x * x / df));
}

double t_quantile(double p, double df) {
  require(p > 0.0 && p < 1.0, "quantile needs p in (0, 1)");
  require(df > 0.0, "t distribution needs df > 0");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -t_quantile(1.0 - p, df);
  double hi = 1.0;
  while (t_cdf(hi, df) < p) {
    hi *= 2.0;
    if (hi > 1e300) fail(ErrorCode::NonConvergence, "t quantile bracket");
  }
  return invert_cdf([df](double x) { return t_cdf(x, df); },
                    [df](double x) { return t_pdf(x, df); }, p, 0.0, hi, 0.5 * hi);
}

double f_cdf(double x, double df1, double df2) {
  require(df1 > 0.0 && df2 > 0.0, "F distribution needs positive dfs");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double denom = df1 * x + df2;
  return incomplete_beta(0.5 * df1, 0.5 * df2, df1 * x / denom, df2 / denom).lower;
}

double f_sf(double x, double df1, double df2) {
  require(df1 > 0.0 && df2 > 0.0, "F distribution needs positive dfs");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double denom = df1 * x + df2;
  return incomplete_beta(0.5 * df1, 0.5 * df2, df1 * x / denom, df2 / denom).upper;
}

double f_pdf(double x, double df1, double df2) {
  require(df1 > 0.0 && df2 > 0.0, "F distribution needs positive dfs");
  if (x <= 0.0) return 0.0;
  const double log_pdf = 0.5 * (df1 * std::log(df1 * x) + df2 * std::log(df2) -
                                (df1 + df2) * std::log(df1 * x + df2)) -
                         std::log(x) - log_beta(0.5 * df1, 0.5 * df2);
  return std::exp(log_pdf);
}

double f_quantile(double p, double df1, double df2) {
  require(p > 0.0 && p < 1.0, "quantile needs p in (0, 1)");
  require(df1 > 0.0 && df2 > 0.0, "F distribution needs positive dfs");
  double hi = 1.0;
  while (f_cdf(hi, df1, df2) < p) {
    hi *= 2.0;
    if (hi > 1e300) fail(ErrorCode::NonConvergence, "F quantile bracket");
  }
  return invert_cdf([=](double x) { return f_cdf(x, df1, df2); },
                    [=](double x) { return f_pdf(x, df1, df2); }, p, 0.0, hi, 0.75 * hi);
}

namespace {

// P(range of `groups` iid standard normals <= w).
double normal_range_cdf(double w, double groups) {
  if (w <= 0.0) return 0.0;
  const double power = groups - 1.0;
  auto integrand = [=](double z) {
    const double width = (z - w > 0.0) ? normal_sf(z - w) - normal_sf(z) : normal_cdf(z) - normal_cdf(z - w);
    return normal_pdf(z) * std::pow(std::max(width, 0.0), power);
  };
  // Smooth integrand: a fixed composite rule is accurate and far cheaper than
  // nesting an adaptive one inside the outer integral.
  using Gauss = boost::math::quadrature::gauss<double, 20>;
  constexpr int kPieces = 12;
  constexpr double kLo = -8.5, kHi = 8.5;
  constexpr double step = (kHi - kLo) / kPieces;
  double value = 0.0;
  for (int i = 0; i < kPieces; ++i) value += Gauss::integrate(integrand, kLo + i * step, kLo + (i + 1) * step);
  value *= groups;
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace

double studentized_range_cdf(double q, double groups, double df) {
  require(groups >= 2.0, "studentized range needs at least two groups");
  require(df > 0.0, "studentized range needs df > 0");
  require(!std::isnan(q), "studentized range q is NaN");
  if (q <= 0.0) return 0.0;
  if (std::isinf(q)) return 1.0;
  if (std::isinf(df)) return normal_range_cdf(q, groups);

  // s = sqrt(chi2_df / df) has density proportional to s^(df-1) exp(-df s^2 / 2).
  // Written around s = 1 so large df does not cancel terms of size df log df.
  const double half = 0.5 * df;
  double log_peak;  // log density at s = 1
  if (half > 10.0) {
    const double x2 = half * half;
    const double stirling_tail = (1.0 / 12.0 - (1.0 / 360.0 - 1.0 / (1260.0 * x2)) / x2) / half;
    log_peak = 0.5 * std::log(df / std::numbers::pi) - stirling_tail;
  } else {
    log_peak = half * std::log(df) - std::lgamma(half) - (half - 1.0) * std::log(2.0) - half;
  }
  auto integrand = [=](double s) {
    if (s <= 0.0) return 0.0;
    const double u = s - 1.0;
    const double log_density = log_peak + (df - 1.0) * std::log1p(u) - df * (u + 0.5 * u * u);
    return std::exp(log_density) * normal_range_cdf(q * s, groups);
  };
  const double spread = 1.0 / std::sqrt(2.0 * df);
  const double lo = std::max(0.0, 1.0 - 12.0 * spread);
  const double hi = 1.0 + 12.0 * spread + (df < 4.0 ? 6.0 : 0.0);
  using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  // Split at the mode so the adaptive rule sees the peak.
  const double mid = std::clamp(std::sqrt(std::max(df - 1.0, 0.0) / df), lo, hi);
  double total = 0.0;
  if (mid > lo) total += Quad::integrate(integrand, lo, mid, 12, 1e-10);
  total += Quad::integrate(integrand, mid, hi, 12, 1e-10);
  return std::clamp(total, 0.0, 1.0);
}

double studentized_range_quantile(double p, double groups, double df) {
  require(p > 0.0 && p < 1.0, "quantile needs p in (0, 1)");
  require(groups >= 2.0, "studentized range needs at least two groups");
  require(df > 0.0, "studentized range needs df > 0");
  double lo = 0.0;
  double f_lo = -p;
  double hi = 2.0;
  double f_hi = studentized_range_cdf(hi, groups, df) - p;
  while (f_hi < 0.0) {
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    if (hi > 1e6) fail(ErrorCode::NonConvergence, "studentized range quantile bracket");
    f_hi = studentized_range_cdf(hi, groups, df) - p;
  }
  // Illinois regula falsi with a bisection safeguard.
  int side = 0;
  for (int iter = 0; iter < kQuantileIterationCap; ++iter) {
    double x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double fx = studentized_range_cdf(x, groups, df) - p;
    // Each CDF call costs a double integral; 1e-12 in probability is far
    // below the quadrature error anyway.
    if (std::fabs(fx) < 1e-12 || hi - lo < 1e-10 * std::max(1.0, x)) return x;
    if (fx < 0.0) {
      lo = x;
      f_lo = fx;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = x;
      f_hi = fx;
      if (side == 1) f_lo *= 0.5;
      side = 1;
    }
  }
  fail(ErrorCode::NonConvergence, "studentized range quantile exceeded iteration cap");
}

double kolmogorov_sf(double lambda) noexcept {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Small-lambda form of the Kolmogorov CDF.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int j = 1; j <= 50; ++j) {
      const double k = 2.0 * j - 1.0;
      sum += std::exp(-k * k * pi2 / (8.0 * lambda * lambda));
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_uniform(std::span<const double> sample) {
  if (sample.empty()) fail(ErrorCode::InvalidArgument, "KS test needs a non-empty sample");
  std::vector<double> u(sample.begin(), sample.end());
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = std::clamp(u[i], 0.0, 1.0);
    d = std::max({d, (i + 1) / n - v, v - i / n});
  }
  const double root = std::sqrt(n);
  return {d, kolmogorov_sf((root + 0.12 + 0.11 / root) * d)};
}

}  // namespace peergrade::stats
