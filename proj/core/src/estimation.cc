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
#include <functional>
#include <limits>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

#include "frr/errors.h"

namespace frr {
namespace {

// |pi_raw_j| below this counts as "exactly at chance".
constexpr double kChanceTolerance = 1e-12;
constexpr double kSimplexFastPathTolerance = 1e-12;

absl::Status CheckLevel(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    return absl::InvalidArgumentError("confidence level must lie in (0, 1)");
  }
  return absl::OkStatus();
}

absl::Status CheckSampleSize(const ResponseTally& tally) {
  if (tally.n() < 2) {
    return InsufficientData("need at least 2 responses, got ", tally.n());
  }
  return absl::OkStatus();
}

// `chance_floor[j]` is the smallest probability with which answer j occurs
// whatever the true status is.
EstimateReport Finish(Eigen::VectorXd pi_raw, Eigen::VectorXd variance,
                      const Eigen::VectorXd& chance_floor, std::int64_t n,
                      double level) {
  EstimateReport report;
  report.n = n;
  report.level = level;
  report.pi_projected = ProjectToSimplex(pi_raw);
  for (Eigen::Index j = 0; j < pi_raw.size(); ++j) {
    const auto category = static_cast<std::size_t>(j);
    const double x = pi_raw(j);
    if (x < -kChanceTolerance ||
        (std::abs(x) <= kChanceTolerance && chance_floor(j) > 0.0)) {
      report.flags.push_back({category, FlagKind::kBelowChance});
    } else if (x > 1.0 + kChanceTolerance) {
      report.flags.push_back({category, FlagKind::kAboveOne});
    }
    report.ci.push_back(WaldInterval(x, variance(j), level));
  }
  report.pi_raw = std::move(pi_raw);
  report.variance = std::move(variance);
  return report;
}

Eigen::VectorXd ClosedFormVariance(const Eigen::VectorXd& lambda_hat,
                                   std::int64_t n, double p_truth) {
  const double denom = static_cast<double>(n - 1) * p_truth * p_truth;
  return (lambda_hat.array() * (1.0 - lambda_hat.array()) / denom).matrix();
}

}  // namespace

absl::StatusOr<ResponseTally> ResponseTally::Create(
    std::vector<std::int64_t> counts) {
  if (counts.empty()) {
    return absl::InvalidArgumentError("invalid-tally: no categories");
  }
  std::int64_t n = 0;
  for (std::int64_t c : counts) {
    if (c < 0) {
      return absl::InvalidArgumentError("invalid-tally: negative count");
    }
    n += c;
  }
  if (n < 1) {
    return absl::InvalidArgumentError("invalid-tally: no responses");
  }
  return ResponseTally(std::move(counts), n);
}

Eigen::VectorXd ResponseTally::Proportions() const {
  Eigen::VectorXd lambda(static_cast<Eigen::Index>(counts_.size()));
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    lambda(static_cast<Eigen::Index>(j)) =
        static_cast<double>(counts_[j]) / static_cast<double>(n_);
  }
  return lambda;
}

std::string_view FlagKindName(FlagKind kind) {
  switch (kind) {
    case FlagKind::kBelowChance:
      return "below-chance";
    case FlagKind::kAboveOne:
      return "above-one";
  }
  return "below-chance";
}

bool EstimateReport::IsFlagged(std::size_t category, FlagKind kind) const {
  return std::find(flags.begin(), flags.end(), EstimateFlag{category, kind}) !=
         flags.end();
}

absl::StatusOr<EstimateReport> EstimateBinary(const ResponseTally& tally,
                                              const BinaryDesign& design,
                                              EstimateOptions options) {
  if (tally.k() != 2) {
    return DimensionMismatch("binary design needs a 2-category tally, got ",
                             tally.k());
  }
  if (auto s = CheckSampleSize(tally); !s.ok()) return s;
  if (auto s = CheckLevel(options.level); !s.ok()) return s;

  const double p1 = design.p_truth().value();
  const Eigen::VectorXd lambda = tally.Proportions();
  Eigen::VectorXd pi_raw(2);
  Eigen::VectorXd floor(2);
  for (std::size_t c : {kYes, kNo}) {
    const double forced = design.p_forced(c).value();
    pi_raw(c) = (lambda(c) - forced) / p1;
    floor(c) = forced;
  }
  return Finish(std::move(pi_raw), ClosedFormVariance(lambda, tally.n(), p1),
                floor, tally.n(), options.level);
}

absl::StatusOr<EstimateReport> EstimateQuant(const ResponseTally& tally,
                                             const QuantDesign& design,
                                             EstimateOptions options) {
  if (tally.k() != design.k()) {
    return DimensionMismatch("tally has ", tally.k(), " categories, design has ",
                             design.k());
  }
  if (auto s = CheckSampleSize(tally); !s.ok()) return s;
  if (auto s = CheckLevel(options.level); !s.ok()) return s;

  const double p = design.p_truth().value();
  const Eigen::VectorXd lambda = tally.Proportions();
  const auto k = static_cast<Eigen::Index>(design.k());
  Eigen::VectorXd pi_raw(k);
  Eigen::VectorXd floor(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double forced = design.p_forced()[j].value();
    pi_raw(j) = (lambda(j) - forced) / p;
    floor(j) = forced;
  }
  return Finish(std::move(pi_raw), ClosedFormVariance(lambda, tally.n(), p),
                floor, tally.n(), options.level);
}

absl::StatusOr<EstimateReport> EstimateGeneral(
    const ResponseTally& tally, const MisclassificationDesign& design,
    EstimateOptions options) {
  if (tally.k() != design.k() || design.matrix.rows() != design.matrix.cols()) {
    return DimensionMismatch("tally has ", tally.k(), " categories, design is ",
                             design.matrix.rows(), "x", design.matrix.cols());
  }
  if (auto s = CheckSampleSize(tally); !s.ok()) return s;
  if (auto s = CheckLevel(options.level); !s.ok()) return s;

  const ValidationReport validation = ValidateDesign(design);
  if (!validation.nonsingular) {
    return SingularDesign("condition number ", validation.condition_number,
                          " exceeds ", kMaxConditionNumber);
  }
  const Eigen::VectorXd lambda = tally.Proportions();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(design.matrix);
  Eigen::VectorXd pi_raw = lu.solve(lambda);
  if (!pi_raw.allFinite()) return SingularDesign("linear solve failed");

  Eigen::VectorXd variance =
      design.truth_probability
          ? ClosedFormVariance(lambda, tally.n(), *design.truth_probability)
          : DeltaRuleVariance(design.matrix, lambda,
                              static_cast<double>(tally.n() - 1));
  Eigen::VectorXd floor = design.matrix.rowwise().minCoeff();
  return Finish(std::move(pi_raw), std::move(variance), floor, tally.n(),
                options.level);
}

Eigen::VectorXd ProjectToSimplex(const Eigen::VectorXd& v) {
  const Eigen::Index k = v.size();
  if (k == 0) return v;
  if ((v.array() >= 0.0).all() &&
      std::abs(v.sum() - 1.0) <= kSimplexFastPathTolerance) {
    return v;
  }
  std::vector<double> sorted(v.data(), v.data() + k);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double threshold = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) threshold = candidate;
  }
  return (v.array() - threshold).cwiseMax(0.0).matrix();
}

double NormalCriticalValue(double level) {
  boost::math::normal_distribution<double> standard;
  return boost::math::quantile(standard, 0.5 + level / 2.0);
}

Interval WaldInterval(double estimate, double variance, double level) {
  const double half_width =
      NormalCriticalValue(level) * std::sqrt(std::max(variance, 0.0));
  return {std::clamp(estimate - half_width, 0.0, 1.0),
          std::clamp(estimate + half_width, 0.0, 1.0)};
}

absl::StatusOr<JeopardyReport> Jeopardy(const MisclassificationDesign& design,
                                        const Eigen::VectorXd& prior_pi) {
  if (auto s = CheckOnSimplex(prior_pi, design.k()); !s.ok()) return s;
  const Eigen::Index k = design.matrix.rows();
  JeopardyReport report;
  report.posterior.resize(k, k);
  report.defined.resize(k);
  for (Eigen::Index o = 0; o < k; ++o) {
    const Eigen::RowVectorXd joint =
        design.matrix.row(o).cwiseProduct(prior_pi.transpose());
    const double marginal = joint.sum();
    report.defined[o] = marginal > 0.0;
    if (marginal > 0.0) {
      report.posterior.row(o) = joint / marginal;
    } else {
      report.posterior.row(o).setConstant(
          std::numeric_limits<double>::quiet_NaN());
    }
  }
  return report;
}

}  // namespace frr
