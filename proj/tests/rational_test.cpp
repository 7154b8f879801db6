// Copyright 2026 The Tomocast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "tomocast/errors.hpp"
#include "tomocast/rational.hpp"

namespace tomocast {
namespace {

TEST(ContinuedFraction, ExactRationals) {
  EXPECT_EQ(continued_fraction(1.5, 64), (Fraction{3, 2}));
  EXPECT_EQ(continued_fraction(2.5, 64), (Fraction{5, 2}));
  EXPECT_EQ(continued_fraction(1.0, 64), (Fraction{1, 1}));
  EXPECT_EQ(continued_fraction(7.0 / 12.0, 64), (Fraction{7, 12}));
}

TEST(ContinuedFraction, SqrtTwoConvergent) {
  EXPECT_EQ(continued_fraction(std::sqrt(2.0), 64), (Fraction{41, 29}));
  EXPECT_EQ(continued_fraction(std::sqrt(2.0), 12), (Fraction{17, 12}));
  EXPECT_EQ(continued_fraction(std::sqrt(2.0), 1), (Fraction{1, 1}));
}

TEST(ContinuedFraction, LowestTerms) {
  for (int q = 1; q <= 30; ++q) {
    for (int p = 1; p <= 60; ++p) {
      const auto f = continued_fraction(static_cast<double>(p) / q, 64);
      ASSERT_TRUE(f.has_value());
      EXPECT_EQ(std::gcd(f->p, f->q), 1);
      EXPECT_EQ(f->p * q, p * f->q);
    }
  }
}

TEST(Rationalize, ThreeTimes) {
  const RationalStructure s = rationalize({1.0, 1.5, 2.5});
  ASSERT_TRUE(s.rational);
  EXPECT_EQ(s.ratios, (std::vector<Fraction>{{1, 1}, {3, 2}, {5, 2}}));
  EXPECT_EQ(s.lcm_q, 2);
  EXPECT_DOUBLE_EQ(s.gamma, 2.0);
}

TEST(Rationalize, TwoTimes) {
  const RationalStructure s = rationalize({2.0, 3.0});
  ASSERT_TRUE(s.rational);
  EXPECT_EQ(s.ratios, (std::vector<Fraction>{{1, 1}, {3, 2}}));
  EXPECT_EQ(s.lcm_q, 2);
  EXPECT_DOUBLE_EQ(s.gamma, 1.0);
}

TEST(Rationalize, SqrtTwoIsIrrationalAtTightTolerance) {
  EXPECT_FALSE(rationalize({1.0, std::sqrt(2.0)}, 64, 1e-12).rational);
  EXPECT_FALSE(rationalize({1.0, std::sqrt(2.0)}).rational);
}

TEST(Rationalize, GammaTimesTauIsInteger) {
  const std::vector<double> times{0.3, 0.3 * 7.0 / 4.0, 0.3 * 5.0 / 2.0, 0.3 * 10.0 / 3.0};
  const RationalStructure s = rationalize(times);
  ASSERT_TRUE(s.rational);
  EXPECT_EQ(s.lcm_q, 12);
  for (double t : times) {
    const double g = s.gamma * t;
    EXPECT_NEAR(g, std::round(g), 1e-9);
  }
}

TEST(Rationalize, ScalingInvariance) {
  const std::vector<double> base{1.0, 4.0 / 3.0, 11.0 / 5.0};
  const RationalStructure s = rationalize(base);
  for (double c : {0.01, 0.5, 3.0, 1000.0}) {
    std::vector<double> scaled;
    for (double t : base) scaled.push_back(c * t);
    const RationalStructure sc = rationalize(scaled);
    ASSERT_TRUE(sc.rational);
    EXPECT_EQ(sc.ratios, s.ratios);
    EXPECT_NEAR(sc.gamma, s.gamma / c, 1e-12 * s.gamma / c);
  }
}

TEST(Rationalize, SingleTime) {
  const RationalStructure s = rationalize({0.25});
  ASSERT_TRUE(s.rational);
  EXPECT_EQ(s.lcm_q, 1);
  EXPECT_DOUBLE_EQ(s.gamma, 4.0);
}

TEST(Rationalize, QMaxBoundsDenominators) {
  EXPECT_FALSE(rationalize({1.0, 1.0 + 1.0 / 65.0}, 64).rational);
  EXPECT_TRUE(rationalize({1.0, 1.0 + 1.0 / 65.0}, 65).rational);
}

TEST(CheckedLcm, OverflowThrows) {
  EXPECT_EQ(checked_lcm(4, 6), 12);
  const std::int64_t big = (std::int64_t{1} << 62) - 57;  // odd, coprime to 3
  EXPECT_THROW(checked_lcm(big, 3), OverflowError);
}

}  // namespace
}  // namespace tomocast
