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

// Monte Carlo respondents for checking estimators against known truth.
//
// A self-protective respondent ignores the spinner and always gives the safe
// answer. With a fraction theta of such respondents the observed answer
// distribution is (1 - theta) P pi + theta e_safe.

#ifndef FRR_SIMULATION_H_
#define FRR_SIMULATION_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "absl/status/statusor.h"
#include "frr/design_io.h"
#include "frr/estimation.h"
#include "frr/randomizer.h"

namespace frr {

struct Respondent {
  std::size_t true_status = 0;
  bool self_protective = false;
  std::size_t safe_category = 0;
};

struct PopulationSpec {
  Eigen::VectorXd pi;
  std::int64_t n = 0;
  double sp_rate = 0.0;
  std::size_t safe_category = 0;

  absl::Status Validate(std::size_t k) const;
  std::string Digest() const;
};

// "no" for binary designs, the first category otherwise.
std::size_t DefaultSafeCategory(const DesignSpec& design);

struct SimResult {
  ResponseTally tally;
  std::uint64_t seed = 0;
  std::uint64_t replication_id = 0;
};

// Observed answer of one respondent.
std::size_t SimulateResponse(const Respondent& respondent,
                             const SpinnerLayout& layout, RandomStream& stream);

// Draws spec.n respondents from RandomStream(seed).Split(replication_id).
absl::StatusOr<SimResult> SimulateSurvey(const PopulationSpec& spec,
                                         const SpinnerLayout& layout,
                                         std::uint64_t seed,
                                         std::uint64_t replication_id = 0);

// Forward model: (1 - sp_rate) P pi + sp_rate e_safe.
Eigen::VectorXd ExpectedAnswerDistribution(const MisclassificationDesign& design,
                                           const PopulationSpec& spec);

struct CalibrationOptions {
  double level = kDefaultConfidenceLevel;
  int interleave = kDefaultInterleave;
  // 0 = std::thread::hardware_concurrency(). Results do not depend on it.
  unsigned threads = 0;
};

struct CategoryCalibration {
  double true_pi = 0.0;
  double expected_lambda = 0.0;
  double mean_lambda_hat = 0.0;
  // Standard error of mean_lambda_hat under the forward model.
  double lambda_se = 0.0;
  double mean_pi_raw = 0.0;
  double bias = 0.0;
  // P^-1 expected_lambda - pi; zero when every respondent complies.
  double predicted_bias = 0.0;
  // sqrt(theoretical_variance / R).
  double bias_se = 0.0;
  double empirical_variance = 0.0;
  // lambda (1 - lambda) / (n p^2) at the forward-model lambda.
  double theoretical_variance = 0.0;
  double variance_relative_error = 0.0;
  // Share of replications whose Wald interval contains true_pi.
  double coverage = 0.0;
};

struct CalibrationReport {
  std::string generator;
  std::uint64_t seed = 0;
  std::string spec_digest;
  std::string design_digest;
  std::int64_t replications = 0;
  std::int64_t n = 0;
  double sp_rate = 0.0;
  std::size_t safe_category = 0;
  double level = kDefaultConfidenceLevel;
  std::vector<std::string> labels;
  std::vector<CategoryCalibration> categories;
  // max over replications of |sum_j pi_raw_j - 1|.
  double max_sum_identity_error = 0.0;
  std::int64_t flagged_replications = 0;
};

inline constexpr std::int64_t kMinCalibrationReplications = 100;

// Runs `replications` independent surveys and summarizes the estimator.
// Binary and quant designs only (the spinner needs forced categories).
absl::StatusOr<CalibrationReport> Calibrate(const PopulationSpec& spec,
                                            const DesignSpec& design,
                                            std::int64_t replications,
                                            std::uint64_t seed,
                                            CalibrationOptions options = {});

nlohmann::json CalibrationReportToJson(const CalibrationReport& report);
std::string CalibrationReportToTable(const CalibrationReport& report);

}  // namespace frr

#endif  // FRR_SIMULATION_H_
