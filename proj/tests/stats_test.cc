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

#include <cmath>
#include <random>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "tempex/error.h"
#include "testing/oracles.h"

namespace tempex {
namespace {

TEST(SpecialFunctionsTest, IncompleteBetaMatchesBoost) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ab(0.1, 60), x(0, 1);
  for (int i = 0; i < 2000; ++i) {
    const double a = ab(rng), b = ab(rng), xv = x(rng);
    EXPECT_NEAR(RegularizedIncompleteBeta(a, b, xv),
                boost::math::ibeta(a, b, xv), 1e-10)
        << a << " " << b << " " << xv;
  }
  EXPECT_EQ(RegularizedIncompleteBeta(2, 3, 0), 0.0);
  EXPECT_EQ(RegularizedIncompleteBeta(2, 3, 1), 1.0);
}

TEST(SpecialFunctionsTest, DistributionsMatchBoost) {
  for (double dof : {1.0, 2.0, 3.0, 7.5, 30.0, 300.0}) {
    boost::math::students_t dist(dof);
    for (double t : {-8.0, -2.5, -0.3, 0.0, 0.4, 1.96, 5.0}) {
      EXPECT_NEAR(StudentTCdf(t, dof), boost::math::cdf(dist, t), 1e-10);
    }
  }
  for (double d1 : {1.0, 3.0, 9.0}) {
    for (double d2 : {2.0, 16.0, 45.0}) {
      boost::math::fisher_f dist(d1, d2);
      for (double f : {0.0, 0.2, 1.0, 3.5, 12.0}) {
        EXPECT_NEAR(FCdf(f, d1, d2), boost::math::cdf(dist, f), 1e-10);
        EXPECT_NEAR(FSurvival(f, d1, d2),
                    boost::math::cdf(boost::math::complement(dist, f)), 1e-10);
      }
    }
  }
}

TEST(PairedTTestTest, TextbookFixture) {
  const std::vector<double> a = {2.1, 2.5, 1.9, 2.8};
  const std::vector<double> b = {2.0, 2.1, 1.8, 2.2};
  TTestResult r = PairedTTest(a, b);
  auto oracle = testing::TextbookPairedT(a, b);
  EXPECT_FALSE(r.degenerate);
  EXPECT_EQ(r.dof, 3u);
  EXPECT_NEAR(r.t, oracle.t, 1e-6);
  boost::math::students_t dist(3);
  const double p = 2 * boost::math::cdf(boost::math::complement(
                           dist, std::abs(oracle.t)));
  EXPECT_NEAR(r.p_two_sided, p, 1e-6);
  EXPECT_NEAR(r.mean_difference, 0.3, 1e-12);
}

TEST(PairedTTestTest, Degenerate) {
  const std::vector<double> a = {1, 2, 3};
  TTestResult same = PairedTTest(a, a);
  EXPECT_TRUE(same.degenerate);
  EXPECT_TRUE(std::isnan(same.t));
  EXPECT_EQ(same.p_two_sided, 1.0);
  TTestResult shift = PairedTTest(a, std::vector<double>{0, 1, 2});
  EXPECT_TRUE(shift.degenerate);
  EXPECT_EQ(shift.mean_difference, 1.0);
  EXPECT_EQ(shift.p_two_sided, 0.0);
}

TEST(PairedTTestTest, Errors) {
  EXPECT_THROW(PairedTTest(std::vector<double>{1}, std::vector<double>{2}),
               Error);
  EXPECT_THROW(
      PairedTTest(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}),
      Error);
}

TEST(OneWayAnovaTest, TextbookFixture) {
  const std::vector<std::vector<double>> groups = {
      {84.1, 85.3, 83.9, 84.7, 85.0},
      {84.0, 84.6, 83.2, 85.1, 84.4},
      {83.7, 84.9, 84.2, 83.5, 84.8},
      {82.9, 83.4, 84.0, 83.1, 83.6}};
  AnovaResult r = OneWayAnova(groups);
  auto oracle = testing::TextbookOneWayAnova(groups);
  EXPECT_NEAR(r.f, oracle.f, 1e-6);
  EXPECT_EQ(r.df_between, 3u);
  EXPECT_EQ(r.df_within, 16u);
  boost::math::fisher_f dist(3, 16);
  EXPECT_NEAR(r.p, boost::math::cdf(boost::math::complement(dist, oracle.f)),
              1e-6);
}

TEST(OneWayAnovaTest, Degenerate) {
  const std::vector<std::vector<double>> same = {{2, 2, 2}, {2, 2}};
  AnovaResult r = OneWayAnova(same);
  EXPECT_EQ(r.f, 0.0);
  EXPECT_EQ(r.p, 1.0);
  const std::vector<std::vector<double>> apart = {{1, 1}, {3, 3}};
  AnovaResult s = OneWayAnova(apart);
  EXPECT_TRUE(std::isinf(s.f));
  EXPECT_EQ(s.p, 0.0);
  const std::vector<std::vector<double>> equal_means = {{1, 3}, {1, 3}};
  EXPECT_NEAR(OneWayAnova(equal_means).f, 0.0, 1e-12);
}

TEST(OneWayAnovaTest, Errors) {
  const std::vector<std::vector<double>> one = {{1, 2, 3}};
  EXPECT_THROW(OneWayAnova(one), Error);
  const std::vector<std::vector<double>> tiny = {{1, 2}, {3}};
  EXPECT_THROW(OneWayAnova(tiny), Error);
}

}  // namespace
}  // namespace tempex
