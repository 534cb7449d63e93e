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


// Significance tests used to compare cross-validation results.

#ifndef TEMPEX_STATS_H_
#define TEMPEX_STATS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace tempex {

// I_x(a, b) for a, b > 0 and x in [0, 1], by continued fraction.
double RegularizedIncompleteBeta(double a, double b, double x);

// P(T <= t) for Student's t with `dof` degrees of freedom.
double StudentTCdf(double t, double dof);

// P(F <= f) and P(F > f) for the F distribution with (d1, d2) degrees.
double FCdf(double f, double d1, double d2);
double FSurvival(double f, double d1, double d2);

struct TTestResult {
  // NaN when the differences have zero variance.
  double t = 0.0;
  double p_two_sided = 1.0;
  double mean_difference = 0.0;
  size_t dof = 0;
  // All pairwise differences are identical, so t is undefined. p is then
  // 1 if the common difference is zero and 0 otherwise.
  bool degenerate = false;
};

// Paired t-test of a against b. Throws Error unless the lists have equal
// length of at least 2.
TTestResult PairedTTest(std::span<const double> a, std::span<const double> b);

struct AnovaResult {
  double f = 0.0;
  double p = 1.0;
  size_t df_between = 0;
  size_t df_within = 0;
  double ss_between = 0.0;
  double ss_within = 0.0;
};

// One-way ANOVA. Throws Error unless there are at least 2 groups of at
// least 2 values. If every group is constant, F is 0 (p = 1) when all groups
// share the constant and +inf (p = 0) otherwise.
AnovaResult OneWayAnova(std::span<const std::vector<double>> groups);

}  // namespace tempex

#endif  // TEMPEX_STATS_H_
