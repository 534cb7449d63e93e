// Copyright 2026 The tempex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "tempex/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tempex/error.h"

namespace tempex {

namespace {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 1000;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
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
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
    throw Error("incomplete beta needs a, b > 0 and x in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTCdf(double t, double dof) {
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double tail =
      0.5 * RegularizedIncompleteBeta(dof / 2.0, 0.5, dof / (dof + t * t));
  return t > 0 ? 1.0 - tail : tail;
}

double FSurvival(double f, double d1, double d2) {
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  return RegularizedIncompleteBeta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

double FCdf(double f, double d1, double d2) {
  if (f <= 0.0) return 0.0;
  if (std::isinf(f)) return 1.0;
  return RegularizedIncompleteBeta(d1 / 2.0, d2 / 2.0, d1 * f / (d1 * f + d2));
}

TTestResult PairedTTest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error("paired t-test needs lists of equal length");
  }
  if (a.size() < 2) throw Error("paired t-test needs at least 2 pairs");
  const size_t n = a.size();
  std::vector<double> diff(n);
  for (size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];

  TTestResult result;
  result.dof = n - 1;
  double sum = 0.0;
  for (double d : diff) sum += d;
  result.mean_difference = sum / static_cast<double>(n);

  const bool constant = std::all_of(diff.begin(), diff.end(),
                                    [&](double d) { return d == diff[0]; });
  if (constant) {
    result.degenerate = true;
    result.mean_difference = diff[0];
    result.t = std::numeric_limits<double>::quiet_NaN();
    result.p_two_sided = diff[0] == 0.0 ? 1.0 : 0.0;
    return result;
  }
  double ss = 0.0;
  for (double d : diff) {
    const double e = d - result.mean_difference;
    ss += e * e;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  result.t = result.mean_difference / (sd / std::sqrt(static_cast<double>(n)));
  const double dof = static_cast<double>(result.dof);
  result.p_two_sided = RegularizedIncompleteBeta(
      dof / 2.0, 0.5, dof / (dof + result.t * result.t));
  return result;
}

AnovaResult OneWayAnova(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2) throw Error("ANOVA needs at least 2 groups");
  size_t total = 0;
  double grand_sum = 0.0;
  bool all_constant = true;
  for (const auto& g : groups) {
    if (g.size() < 2) throw Error("ANOVA needs at least 2 values per group");
    total += g.size();
    for (double v : g) grand_sum += v;
    all_constant = all_constant &&
                   std::all_of(g.begin(), g.end(),
                               [&](double v) { return v == g[0]; });
  }
  AnovaResult result;
  result.df_between = groups.size() - 1;
  result.df_within = total - groups.size();

  if (all_constant) {
    const double first = groups[0][0];
    const bool same = std::all_of(
        groups.begin(), groups.end(),
        [&](const std::vector<double>& g) { return g[0] == first; });
    result.f = same ? 0.0 : std::numeric_limits<double>::infinity();
    result.p = same ? 1.0 : 0.0;
    if (!same) {
      const double grand = grand_sum / static_cast<double>(total);
      for (const auto& g : groups) {
        const double e = g[0] - grand;
        result.ss_between += static_cast<double>(g.size()) * e * e;
      }
    }
    return result;
  }

  const double grand = grand_sum / static_cast<double>(total);
  for (const auto& g : groups) {
    double sum = 0.0;
    for (double v : g) sum += v;
    const double mean = sum / static_cast<double>(g.size());
    result.ss_between +=
        static_cast<double>(g.size()) * (mean - grand) * (mean - grand);
    for (double v : g) result.ss_within += (v - mean) * (v - mean);
  }
  const double ms_between =
      result.ss_between / static_cast<double>(result.df_between);
  const double ms_within =
      result.ss_within / static_cast<double>(result.df_within);
  result.f = ms_between / ms_within;
  result.p = FSurvival(result.f, static_cast<double>(result.df_between),
                       static_cast<double>(result.df_within));
  return result;
}

}  // namespace tempex
