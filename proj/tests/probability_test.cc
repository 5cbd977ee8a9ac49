// Copyright 2026 The FRR Toolkit Authors
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

#include "frr/probability.h"

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"

namespace frr {
namespace {

using ::frr::testing::HasTag;
using ::frr::testing::Unwrap;

TEST(ProbabilityTest, ParsesRationalsExactly) {
  Probability p = Unwrap(Probability::Parse("27/36"));
  ASSERT_TRUE(p.is_exact());
  EXPECT_EQ(*p.exact(), Rational(3, 4));
  EXPECT_DOUBLE_EQ(p.value(), 0.75);
  EXPECT_EQ(p.ToString(), "3/4");
}

TEST(ProbabilityTest, IntegersAreExactAndDecimalsAreNot) {
  EXPECT_TRUE(Unwrap(Probability::Parse(" 1 ")).is_exact());
  Probability d = Unwrap(Probability::Parse("0.25"));
  EXPECT_FALSE(d.is_exact());
  EXPECT_DOUBLE_EQ(d.value(), 0.25);
  EXPECT_FALSE(Unwrap(Probability::Parse("1e-1")).is_exact());
}

TEST(ProbabilityTest, RejectsMalformedText) {
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "0.5x", "nan", "inf",
                          "99999999999999/3"}) {
    EXPECT_THAT(Probability::Parse(bad).status(), HasTag(error_tag::kParseError))
        << bad;
  }
}

TEST(ProbabilityTest, ExactArithmetic) {
  const Probability a = Probability::Exact(1, 6);
  const Probability b = Probability::Exact(1, 12);
  EXPECT_EQ(a + b, Probability::Exact(1, 4));
  EXPECT_EQ(a - b, Probability::Exact(1, 12));
  EXPECT_EQ(a * b, Probability::Exact(1, 72));
  EXPECT_EQ(Probability::Exact(3, 4) / 18, Probability::Exact(1, 24));
  EXPECT_TRUE((a + b).is_exact());
}

TEST(ProbabilityTest, MixingWithInexactFallsBackToDouble) {
  const Probability sum = Probability::Exact(1, 2) + Probability::FromDouble(0.25);
  EXPECT_FALSE(sum.is_exact());
  EXPECT_DOUBLE_EQ(sum.value(), 0.75);
}

TEST(ProbabilityTest, UnitIntervalAndSign) {
  EXPECT_TRUE(Probability::Exact(0, 1).InUnitInterval());
  EXPECT_TRUE(Probability::Exact(1, 1).InUnitInterval());
  EXPECT_FALSE(Probability::Exact(-1, 3).InUnitInterval());
  EXPECT_FALSE(Probability::FromDouble(1.0000001).InUnitInterval());
  EXPECT_TRUE(Probability::Exact(0, 5).IsZero());
  EXPECT_TRUE(Probability::FromDouble(1e-300).IsPositive());
}

TEST(ProbabilityTest, SumsToOneIsExactForRationals) {
  std::vector<Probability> parts = {Probability::Exact(27, 36),
                                    Probability::Exact(6, 36),
                                    Probability::Exact(3, 36)};
  EXPECT_TRUE(SumsToOne(Sum(parts)));
  parts[2] = Probability::Exact(4, 36);
  EXPECT_FALSE(SumsToOne(Sum(parts)));
}

TEST(ProbabilityTest, SumsToOneToleranceForDecimals) {
  std::vector<Probability> tenths(10, Probability::FromDouble(0.1));
  EXPECT_TRUE(SumsToOne(Sum(tenths)));
  std::vector<Probability> off = {Probability::FromDouble(0.5),
                                  Probability::FromDouble(0.5 + 1e-9)};
  EXPECT_FALSE(SumsToOne(Sum(off)));
}

// Property: k copies of 1/k always sum to exactly one, and the running sum
// stays exact.
TEST(ProbabilityPropertyTest, UniformPartitionsSumExactly) {
  for (std::int64_t k = 1; k <= 200; ++k) {
    std::vector<Probability> parts(static_cast<std::size_t>(k),
                                   Probability::Exact(1, k));
    const Probability total = Sum(parts);
    ASSERT_TRUE(total.is_exact()) << k;
    EXPECT_TRUE(SumsToOne(total)) << k;
  }
}

// Property: Parse(ToString(p)) == p for random exact values.
TEST(ProbabilityPropertyTest, ToStringRoundTrips) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> den(1, 1'000'000);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t d = den(rng);
    const std::int64_t n =
        std::uniform_int_distribution<std::int64_t>(0, d)(rng);
    const Probability p = Probability::Exact(n, d);
    EXPECT_EQ(Unwrap(Probability::Parse(p.ToString())), p);
  }
}

TEST(ErrorTagTest, ExtractsPrefix) {
  EXPECT_EQ(ErrorTag(InvalidDesign("x")), "invalid-design");
  EXPECT_EQ(ErrorTag(absl::InternalError("no tag here")), "");
}

}  // namespace
}  // namespace frr
