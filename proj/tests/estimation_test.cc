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

#include "frr/estimation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "oracles.h"
#include "test_util.h"

namespace frr {
namespace {

using ::frr::testing::DiceDesign;
using ::frr::testing::HasTag;
using ::frr::testing::SpinnerDesign;
using ::frr::testing::Unwrap;

ResponseTally Tally(std::vector<std::int64_t> counts) {
  return Unwrap(ResponseTally::Create(std::move(counts)));
}

Eigen::VectorXd Vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

bool OnSimplex(const Eigen::VectorXd& v, double tol) {
  return (v.array() >= -tol).all() && std::abs(v.sum() - 1.0) <= tol;
}

TEST(TallyTest, Validation) {
  EXPECT_THAT(ResponseTally::Create({}).status(),
              HasTag(error_tag::kInvalidTally));
  EXPECT_THAT(ResponseTally::Create({3, -1}).status(),
              HasTag(error_tag::kInvalidTally));
  EXPECT_THAT(ResponseTally::Create({0, 0}).status(),
              HasTag(error_tag::kInvalidTally));
  const ResponseTally t = Tally({1, 3});
  EXPECT_EQ(t.n(), 4);
  EXPECT_TRUE(t.Proportions().isApprox(Vec({0.25, 0.75})));
}

TEST(EstimateBinaryTest, HalfYesOracle) {
  const EstimateReport r =
      Unwrap(EstimateBinary(Tally({500, 500}), DiceDesign()));
  EXPECT_NEAR(r.pi_raw(kYes), oracle::kPiHatYes500, 1e-12);
  EXPECT_NEAR(r.pi_raw(kNo), 1.0 - oracle::kPiHatYes500, 1e-12);
  EXPECT_NEAR(r.variance(kYes), oracle::kVarYes500, 1e-16);
  EXPECT_NEAR(r.ci[kYes].lower, oracle::kCiLowerYes500, 1e-9);
  EXPECT_NEAR(r.ci[kYes].upper, oracle::kCiUpperYes500, 1e-9);
  EXPECT_TRUE(r.flags.empty());
  EXPECT_EQ(r.n, 1000);
}

TEST(EstimateBinaryTest, BelowChanceOracle) {
  const EstimateReport r =
      Unwrap(EstimateBinary(Tally({100, 900}), DiceDesign()));
  EXPECT_NEAR(r.pi_raw(kYes), oracle::kPiHatYes100, 1e-12);
  EXPECT_NEAR(r.variance(kYes), oracle::kVarYes100, 1e-16);
  EXPECT_TRUE(r.IsFlagged(kYes, FlagKind::kBelowChance));
  EXPECT_TRUE(r.IsFlagged(kNo, FlagKind::kAboveOne));
  EXPECT_DOUBLE_EQ(r.pi_projected(kYes), 0.0);
  EXPECT_DOUBLE_EQ(r.pi_projected(kNo), 1.0);
  EXPECT_DOUBLE_EQ(r.ci[kYes].lower, 0.0);
}

TEST(EstimateBinaryTest, DirectQuestioningIdentity) {
  const BinaryDesign direct = Unwrap(BinaryDesign::Create(
      Probability::Exact(1, 1), Probability::Exact(0, 1),
      Probability::Exact(0, 1)));
  const EstimateReport r = Unwrap(EstimateBinary(Tally({30, 70}), direct));
  EXPECT_DOUBLE_EQ(r.pi_raw(kYes), 0.3);
}

TEST(EstimateBinaryTest, Errors) {
  EXPECT_THAT(EstimateBinary(Tally({1, 0}), DiceDesign()).status(),
              HasTag(error_tag::kInsufficientData));
  EXPECT_THAT(EstimateBinary(Tally({1, 2, 3}), DiceDesign()).status(),
              HasTag(error_tag::kDimensionMismatch));
  EXPECT_FALSE(EstimateBinary(Tally({5, 5}), DiceDesign(), {1.5}).ok());
}

TEST(EstimateQuantTest, SpinnerOracle) {
  const EstimateReport r = Unwrap(
      EstimateQuant(Tally({600, 360, 360, 360, 360, 360}), SpinnerDesign()));
  EXPECT_NEAR(r.pi_raw(0), oracle::kQuantPiFirst, 1e-12);
  EXPECT_NEAR(r.variance(0), oracle::kQuantVarFirst, 1e-16);
  for (int j = 1; j < 6; ++j) {
    EXPECT_NEAR(r.pi_raw(j), oracle::kQuantPiRest, 1e-12);
    EXPECT_NEAR(r.variance(j), oracle::kQuantVarRest, 1e-16);
  }
  EXPECT_NEAR(r.pi_raw.sum(), 1.0, 1e-12);
  EXPECT_TRUE(r.flags.empty());
}

TEST(EstimateQuantTest, DirectQuestioningReturnsProportions) {
  const QuantDesign direct = Unwrap(QuantDesign::Create(
      Probability::Exact(1, 1), std::vector<Probability>(4)));
  const ResponseTally t = Tally({3, 9, 0, 11});
  const EstimateReport r = Unwrap(EstimateQuant(t, direct));
  EXPECT_EQ(r.pi_raw, t.Proportions());
}

// A category answered exactly at the device's forced rate is flagged even
// though its estimate is zero rather than negative.
TEST(EstimateQuantTest, CategoryAtChanceIsFlagged) {
  // 1/24 of 2400 = 100 answers in category 6.
  const EstimateReport r = Unwrap(
      EstimateQuant(Tally({700, 500, 500, 300, 300, 100}), SpinnerDesign()));
  EXPECT_NEAR(r.pi_raw(5), 0.0, 1e-15);
  EXPECT_TRUE(r.IsFlagged(5, FlagKind::kBelowChance));
  EXPECT_EQ(r.flags.size(), 1u);
}

TEST(EstimateQuantTest, ZeroVectorProjectsToUniform) {
  const Eigen::VectorXd projected = ProjectToSimplex(Eigen::VectorXd::Zero(6));
  for (int j = 0; j < 6; ++j) EXPECT_NEAR(projected(j), 1.0 / 6, 1e-15);
}

TEST(EstimateQuantTest, Errors) {
  EXPECT_THAT(EstimateQuant(Tally({1, 2}), SpinnerDesign()).status(),
              HasTag(error_tag::kDimensionMismatch));
  EXPECT_THAT(
      EstimateQuant(Tally({1, 0, 0, 0, 0, 0}), SpinnerDesign()).status(),
      HasTag(error_tag::kInsufficientData));
}

TEST(EstimateGeneralTest, CustomMatrixOracle) {
  Eigen::MatrixXd p(3, 3);
  p << 0.7, 0.1, 0.2, 0.2, 0.8, 0.1, 0.1, 0.1, 0.7;
  const MisclassificationDesign d = Unwrap(MakeCustomDesign(p));
  const EstimateReport r = Unwrap(EstimateGeneral(Tally({400, 350, 250}), d));
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(r.pi_raw(j), oracle::kCustomPi[j], 1e-12);
    EXPECT_NEAR(r.variance(j), oracle::kCustomVar[j], 1e-15);
  }
}

TEST(EstimateGeneralTest, BinaryDesignMatchesClosedForm) {
  const EstimateReport general = Unwrap(
      EstimateGeneral(Tally({500, 500}), BuildBinaryMatrix(DiceDesign())));
  EXPECT_NEAR(general.pi_raw(kYes), oracle::kPiHatYes500, 1e-12);
  EXPECT_NEAR(general.pi_raw(kNo), 0.5555555555555556, 1e-12);
  EXPECT_NEAR(general.variance(kYes), oracle::kVarYes500, 1e-16);
}

TEST(EstimateGeneralTest, IdentityReproducesProportions) {
  MisclassificationDesign identity{Eigen::MatrixXd::Identity(4, 4),
                                   DesignSource::kCustom, std::nullopt};
  const ResponseTally t = Tally({17, 3, 0, 80});
  const EstimateReport r = Unwrap(EstimateGeneral(t, identity));
  EXPECT_EQ(r.pi_raw, t.Proportions());
}

TEST(EstimateGeneralTest, RejectsSingularAndMismatched) {
  Eigen::MatrixXd singular(2, 2);
  singular << 0.5, 0.5, 0.5, 0.5;
  MisclassificationDesign d{singular, DesignSource::kCustom, std::nullopt};
  EXPECT_THAT(EstimateGeneral(Tally({5, 5}), d).status(),
              HasTag(error_tag::kSingularDesign));
  Eigen::MatrixXd nearly(2, 2);
  nearly << 0.5 + 1e-14, 0.5, 0.5 - 1e-14, 0.5;
  d.matrix = nearly;
  EXPECT_THAT(EstimateGeneral(Tally({5, 5}), d).status(),
              HasTag(error_tag::kSingularDesign));
  EXPECT_THAT(EstimateGeneral(Tally({5, 5, 5}), BuildBinaryMatrix(DiceDesign()))
                  .status(),
              HasTag(error_tag::kDimensionMismatch));
}

// Property: the delta rule with divisor n - 1 collapses to the closed form
// lambda (1 - lambda) / ((n - 1) p^2) whenever P = p I + q 1^T.
TEST(DeltaRulePropertyTest, SpecializesToClosedForm) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = std::uniform_int_distribution<int>(2, 9)(rng);
    const int den = std::uniform_int_distribution<int>(k + 1, 600)(rng);
    const int truth = std::uniform_int_distribution<int>(1, den)(rng);
    std::vector<int> split(k, 0);
    for (int i = 0; i < den - truth; ++i) ++split[rng() % k];
    std::vector<Probability> forced;
    for (int s : split) forced.push_back(Probability::Exact(s, den));
    const QuantDesign q =
        Unwrap(QuantDesign::Create(Probability::Exact(truth, den), forced));
    const double p = static_cast<double>(truth) / den;
    const MisclassificationDesign m = BuildQuantMatrix(q);

    Eigen::VectorXd lambda = Eigen::VectorXd::Random(k).cwiseAbs();
    lambda /= lambda.sum();
    const double n = std::uniform_int_distribution<int>(2, 5000)(rng);
    const Eigen::VectorXd delta = DeltaRuleVariance(m.matrix, lambda, n - 1);
    const Eigen::VectorXd closed =
        (lambda.array() * (1 - lambda.array()) / ((n - 1) * p * p)).matrix();
    for (int j = 0; j < k; ++j) {
      EXPECT_NEAR(delta(j), closed(j), 1e-10 * std::max(1.0, closed(j)))
          << "k=" << k << " p=" << p;
    }
  }
}

// Property: for random valid designs and tallies the general solver agrees
// with the closed forms entry by entry.
TEST(EquivalencePropertyTest, GeneralEqualsClosedForm) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const bool binary = trial % 2 == 0;
    const int k = binary ? 2 : std::uniform_int_distribution<int>(2, 8)(rng);
    const int den = std::uniform_int_distribution<int>(k + 1, 400)(rng);
    const int truth = std::uniform_int_distribution<int>(1, den)(rng);
    std::vector<int> split(k, 0);
    for (int i = 0; i < den - truth; ++i) ++split[rng() % k];
    std::vector<Probability> forced;
    for (int s : split) forced.push_back(Probability::Exact(s, den));

    std::vector<std::int64_t> counts(k);
    for (auto& c : counts) c = std::uniform_int_distribution<int>(0, 300)(rng);
    counts[0] += 2;
    const ResponseTally t = Tally(counts);

    EstimateReport closed, general;
    if (binary) {
      const BinaryDesign d = Unwrap(BinaryDesign::Create(
          Probability::Exact(truth, den), forced[0], forced[1]));
      closed = Unwrap(EstimateBinary(t, d));
      general = Unwrap(EstimateGeneral(t, BuildBinaryMatrix(d)));
    } else {
      const QuantDesign d =
          Unwrap(QuantDesign::Create(Probability::Exact(truth, den), forced));
      closed = Unwrap(EstimateQuant(t, d));
      general = Unwrap(EstimateGeneral(t, BuildQuantMatrix(d)));
    }
    // The general solver's accuracy scales with the condition number.
    const double scale = std::max(1.0, 1.0 / (static_cast<double>(truth) / den));
    for (int j = 0; j < k; ++j) {
      ASSERT_NEAR(general.pi_raw(j), closed.pi_raw(j), 1e-10 * scale);
      ASSERT_NEAR(general.variance(j), closed.variance(j), 1e-10 * scale);
      ASSERT_NEAR(general.pi_projected(j), closed.pi_projected(j),
                  1e-10 * scale);
    }
  }
}

// Property: the quant estimates always sum to one.
TEST(SumIdentityPropertyTest, QuantEstimatesSumToOne) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::int64_t> counts(6);
    for (auto& c : counts) c = std::uniform_int_distribution<int>(0, 1000)(rng);
    counts[2] += 2;
    const EstimateReport r =
        Unwrap(EstimateQuant(Tally(counts), SpinnerDesign()));
    EXPECT_NEAR(r.pi_raw.sum(), 1.0, 1e-9);
    EXPECT_TRUE(OnSimplex(r.pi_projected, 1e-9));
    for (const Interval& ci : r.ci) {
      EXPECT_GE(ci.lower, 0.0);
      EXPECT_LE(ci.upper, 1.0);
      EXPECT_LE(ci.lower, ci.upper);
    }
  }
}

TEST(ProjectTest, Examples) {
  EXPECT_EQ(ProjectToSimplex(Vec({0.2, 0.8})), Vec({0.2, 0.8}));
  const Eigen::VectorXd p = ProjectToSimplex(Vec({-0.0888889, 1.0888889}));
  EXPECT_DOUBLE_EQ(p(0), 0.0);
  EXPECT_DOUBLE_EQ(p(1), 1.0);
  const Eigen::VectorXd third = ProjectToSimplex(Vec({0.5, 0.5, 0.5}));
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(third(j), 1.0 / 3, 1e-15);
}

// Property: projections land on the simplex, are idempotent, commute with
// permutations and are no farther from the input than any simplex point.
TEST(ProjectPropertyTest, Invariants) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal(0.2, 0.6);
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = std::uniform_int_distribution<int>(1, 10)(rng);
    Eigen::VectorXd v(k);
    for (int j = 0; j < k; ++j) v(j) = normal(rng);
    const Eigen::VectorXd p = ProjectToSimplex(v);
    ASSERT_TRUE(OnSimplex(p, 1e-12));
    EXPECT_TRUE(ProjectToSimplex(p).isApprox(p, 1e-12));

    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Eigen::VectorXd permuted(k), expected(k);
    for (int j = 0; j < k; ++j) {
      permuted(j) = v(order[j]);
      expected(j) = p(order[j]);
    }
    EXPECT_TRUE(ProjectToSimplex(permuted).isApprox(expected, 1e-12));

    Eigen::VectorXd other = Eigen::VectorXd::Random(k).cwiseAbs();
    other /= other.sum();
    EXPECT_LE((p - v).norm(), (other - v).norm() + 1e-12);
  }
}

TEST(WaldTest, Examples) {
  const Interval zero = WaldInterval(0.5, 0.0, 0.95);
  EXPECT_DOUBLE_EQ(zero.lower, 0.5);
  EXPECT_DOUBLE_EQ(zero.upper, 0.5);
  const Interval clamped = WaldInterval(0.02, 1e-2, 0.95);
  EXPECT_DOUBLE_EQ(clamped.lower, 0.0);
  EXPECT_NEAR(clamped.upper, 0.02 + oracle::kZ95 * 0.1, 1e-12);
  const Interval high = WaldInterval(0.99, 1e-2, 0.95);
  EXPECT_DOUBLE_EQ(high.upper, 1.0);
}

TEST(WaldTest, CriticalValues) {
  EXPECT_NEAR(NormalCriticalValue(0.95), oracle::kZ95, 1e-12);
  EXPECT_NEAR(NormalCriticalValue(0.90), oracle::kZ90, 1e-12);
  EXPECT_NEAR(NormalCriticalValue(0.99), oracle::kZ99, 1e-12);
}

TEST(JeopardyTest, DiceOracle) {
  const JeopardyReport j =
      Unwrap(Jeopardy(BuildBinaryMatrix(DiceDesign()), Vec({0.2, 0.8})));
  EXPECT_NEAR(j.posterior(kYes, kYes), oracle::kPosteriorYesGivenYes, 1e-12);
  EXPECT_TRUE(j.defined[kYes]);
}

TEST(JeopardyTest, IdentityRevealsEverything) {
  MisclassificationDesign identity{Eigen::MatrixXd::Identity(3, 3),
                                   DesignSource::kCustom, std::nullopt};
  const JeopardyReport j = Unwrap(Jeopardy(identity, Vec({0.2, 0.3, 0.5})));
  EXPECT_TRUE(j.posterior.isIdentity(0.0));
}

TEST(JeopardyTest, UniformPriorOnSpinnerEqualsDiagonal) {
  const JeopardyReport j = Unwrap(Jeopardy(BuildQuantMatrix(SpinnerDesign()),
                                           Eigen::VectorXd::Constant(6, 1.0 / 6)));
  for (int o = 0; o < 6; ++o) {
    EXPECT_NEAR(j.posterior(o, o), oracle::kQuantDiagonal, 1e-12);
  }
}

TEST(JeopardyTest, ImpossibleAnswerIsUndefined) {
  MisclassificationDesign identity{Eigen::MatrixXd::Identity(2, 2),
                                   DesignSource::kCustom, std::nullopt};
  const JeopardyReport j = Unwrap(Jeopardy(identity, Vec({1.0, 0.0})));
  EXPECT_TRUE(j.defined[0]);
  EXPECT_FALSE(j.defined[1]);
  EXPECT_TRUE(std::isnan(j.posterior(1, 0)));
}

// Property: every defined posterior row is a probability vector.
TEST(JeopardyPropertyTest, RowsSumToOne) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = std::uniform_int_distribution<int>(2, 7)(rng);
    Eigen::MatrixXd p = Eigen::MatrixXd::Random(k, k).cwiseAbs() +
                        Eigen::MatrixXd::Identity(k, k) * k;
    p = p.array().rowwise() / p.colwise().sum().array();
    MisclassificationDesign d{p, DesignSource::kCustom, std::nullopt};
    Eigen::VectorXd prior = Eigen::VectorXd::Random(k).cwiseAbs();
    prior /= prior.sum();
    const JeopardyReport j = Unwrap(Jeopardy(d, prior));
    for (int o = 0; o < k; ++o) {
      if (!j.defined[o]) continue;
      EXPECT_NEAR(j.posterior.row(o).sum(), 1.0, 1e-12);
    }
  }
}

}  // namespace
}  // namespace frr
