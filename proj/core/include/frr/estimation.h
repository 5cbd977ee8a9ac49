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

// Moment estimation of true category proportions from randomized answers.
//
// With lambda_hat the observed answer proportions, every estimator here
// returns pi_raw = P^-1 lambda_hat. For forced-response designs this reduces
// to (lambda_hat_j - p_j) / p with estimated variance
// lambda_hat_j (1 - lambda_hat_j) / ((n - 1) p^2). Custom designs use the
// multinomial delta rule with the same n - 1 divisor, which coincides with the
// closed form whenever P = p I + q 1^T.
//
// pi_raw is unbiased but may leave [0, 1]; pi_projected is its Euclidean
// projection onto the probability simplex and carries no variance.

#ifndef FRR_ESTIMATION_H_
#define FRR_ESTIMATION_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "frr/design.h"

namespace frr {

inline constexpr double kDefaultConfidenceLevel = 0.95;

class ResponseTally {
 public:
  static absl::StatusOr<ResponseTally> Create(std::vector<std::int64_t> counts);

  std::size_t k() const { return counts_.size(); }
  std::int64_t n() const { return n_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }

  // lambda_hat_j = counts_j / n.
  Eigen::VectorXd Proportions() const;

  friend bool operator==(const ResponseTally&, const ResponseTally&) = default;

 private:
  ResponseTally(std::vector<std::int64_t> counts, std::int64_t n)
      : counts_(std::move(counts)), n_(n) {}

  std::vector<std::int64_t> counts_;
  std::int64_t n_;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

enum class FlagKind {
  // pi_raw_j < 0, or pi_raw_j == 0 for a category that can be forced: the
  // category was answered no more often than the device alone produces.
  kBelowChance,
  // pi_raw_j > 1.
  kAboveOne,
};

std::string_view FlagKindName(FlagKind kind);

struct EstimateFlag {
  std::size_t category = 0;
  FlagKind kind = FlagKind::kBelowChance;

  friend bool operator==(const EstimateFlag&, const EstimateFlag&) = default;
};

struct EstimateReport {
  Eigen::VectorXd pi_raw;
  Eigen::VectorXd pi_projected;
  Eigen::VectorXd variance;
  std::vector<Interval> ci;
  std::vector<EstimateFlag> flags;
  std::int64_t n = 0;
  double level = kDefaultConfidenceLevel;

  bool IsFlagged(std::size_t category, FlagKind kind) const;
};

struct EstimateOptions {
  double level = kDefaultConfidenceLevel;
};

absl::StatusOr<EstimateReport> EstimateBinary(const ResponseTally& tally,
                                              const BinaryDesign& design,
                                              EstimateOptions options = {});

absl::StatusOr<EstimateReport> EstimateQuant(const ResponseTally& tally,
                                             const QuantDesign& design,
                                             EstimateOptions options = {});

// Solves P pi = lambda_hat directly; works for any nonsingular design.
absl::StatusOr<EstimateReport> EstimateGeneral(
    const ResponseTally& tally, const MisclassificationDesign& design,
    EstimateOptions options = {});

// Euclidean projection onto {x : x >= 0, sum x = 1}.
Eigen::VectorXd ProjectToSimplex(const Eigen::VectorXd& v);

// estimate +/- z(level) sqrt(variance), clamped to [0, 1].
Interval WaldInterval(double estimate, double variance, double level);

// Two-sided standard normal critical value for a confidence level.
double NormalCriticalValue(double level);

struct JeopardyReport {
  // posterior(o, t) = P(true = t | observed = o).
  Eigen::MatrixXd posterior;
  // False for answers that have zero probability under the prior; the
  // corresponding posterior row is NaN.
  std::vector<bool> defined;
};

// Posterior risk carried by each answer under an assumed prior.
absl::StatusOr<JeopardyReport> Jeopardy(const MisclassificationDesign& design,
                                        const Eigen::VectorXd& prior_pi);

}  // namespace frr

#endif  // FRR_ESTIMATION_H_
