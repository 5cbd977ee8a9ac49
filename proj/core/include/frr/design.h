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

// Forced randomized response designs and their misclassification matrices.
//
// Category conventions used throughout the toolkit:
//   * Categories are 0-based in the C++ API and 1-based in every file or wire
//     format a person reads.
//   * Binary designs use category 0 = "yes" and category 1 = "no".
//   * A misclassification matrix is indexed (observed, true): rows are the
//     observed answer, columns the true status, so lambda = P * pi.

#ifndef FRR_DESIGN_H_
#define FRR_DESIGN_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "frr/probability.h"

namespace frr {

inline constexpr std::size_t kYes = 0;
inline constexpr std::size_t kNo = 1;

// Binary forced response: answer truthfully with probability p_truth, say
// "yes" with p_forced_yes and "no" with p_forced_no.
class BinaryDesign {
 public:
  static absl::StatusOr<BinaryDesign> Create(Probability p_truth,
                                             Probability p_forced_yes,
                                             Probability p_forced_no);

  const Probability& p_truth() const { return p_truth_; }
  const Probability& p_forced_yes() const { return p_forced_yes_; }
  const Probability& p_forced_no() const { return p_forced_no_; }
  const Probability& p_forced(std::size_t category) const {
    return category == kYes ? p_forced_yes_ : p_forced_no_;
  }

  static std::vector<std::string> DefaultLabels() { return {"yes", "no"}; }

 private:
  BinaryDesign(Probability t, Probability y, Probability n)
      : p_truth_(t), p_forced_yes_(y), p_forced_no_(n) {}

  Probability p_truth_;
  Probability p_forced_yes_;
  Probability p_forced_no_;
};

// Discrete quantitative forced response over k ordered categories.
class QuantDesign {
 public:
  // Empty `labels` yields "1".."k".
  static absl::StatusOr<QuantDesign> Create(
      Probability p_truth, std::vector<Probability> p_forced,
      std::vector<std::string> labels = {});

  std::size_t k() const { return p_forced_.size(); }
  const Probability& p_truth() const { return p_truth_; }
  const std::vector<Probability>& p_forced() const { return p_forced_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  QuantDesign(Probability t, std::vector<Probability> f,
              std::vector<std::string> l)
      : p_truth_(t), p_forced_(std::move(f)), labels_(std::move(l)) {}

  Probability p_truth_;
  std::vector<Probability> p_forced_;
  std::vector<std::string> labels_;
};

enum class DesignSource { kBinary, kQuant, kCustom };

std::string_view DesignSourceName(DesignSource source);

// A k x k column-stochastic matrix of P(observed | true).
//
// For designs generated from BinaryDesign/QuantDesign, `truth_probability`
// holds the probability of a truthful answer so estimators can use the
// closed-form variance instead of the general delta rule.
struct MisclassificationDesign {
  Eigen::MatrixXd matrix;
  DesignSource source = DesignSource::kCustom;
  std::optional<double> truth_probability;

  std::size_t k() const { return static_cast<std::size_t>(matrix.rows()); }
};

// Accepts any square, column-stochastic, nonsingular matrix.
absl::StatusOr<MisclassificationDesign> MakeCustomDesign(
    const Eigen::MatrixXd& matrix);

// Rows ordered (yes, no), columns ordered (X=1, X=0):
//   [[p1 + p2, p2], [p3, p1 + p3]].
MisclassificationDesign BuildBinaryMatrix(const BinaryDesign& design);

// P(o, t) = p * [o == t] + p_o.
MisclassificationDesign BuildQuantMatrix(const QuantDesign& design);

// Derives the binary device from a pair of fair six-sided dice: the sum is
// looked up in one of the three outcome sets. The sets must partition 2..12.
absl::StatusOr<BinaryDesign> DiceProbabilities(
    const std::set<int>& truthful_outcomes, const std::set<int>& yes_outcomes,
    const std::set<int>& no_outcomes);

// Designs whose singular-value condition number exceeds this are treated as
// numerically singular.
inline constexpr double kMaxConditionNumber = 1e12;

struct ValidationReport {
  bool column_stochastic = false;
  double max_column_error = 0.0;
  bool entries_in_range = false;

  // Diagonal entry > 1/2, per category. A failure is a warning.
  std::vector<bool> diagonal_dominant;
  bool dominance_pass = false;

  bool nonsingular = false;
  double condition_number = 0.0;

  // A category is protected when it can be observed whatever the true status
  // is, i.e. its row of P is strictly positive. The design is symmetric when
  // every category is protected. A failure is a warning. Direct questioning
  // forces no answer at all, so the check is vacuous and passes.
  std::vector<bool> category_protected;
  bool symmetric = false;
  bool direct_questioning = false;

  bool HasErrors() const {
    return !column_stochastic || !entries_in_range || !nonsingular;
  }
  bool HasWarnings() const { return !dominance_pass || !symmetric; }

  // Human-readable descriptions of every failed check.
  std::vector<std::string> Errors() const;
  std::vector<std::string> Warnings() const;
};

ValidationReport ValidateDesign(const MisclassificationDesign& design);

struct EfficiencyReport {
  // Theoretical Var(pi_hat_j) at the supplied pi and n.
  std::vector<double> variance;
  // pi_j (1 - pi_j) / n.
  std::vector<double> direct_variance;
  // variance / direct_variance; empty when direct variance is zero.
  std::vector<std::optional<double>> inflation_ratio;
};

absl::StatusOr<EfficiencyReport> DesignEfficiency(
    const MisclassificationDesign& design, const Eigen::VectorXd& pi,
    std::size_t n);

// Diagonal of P^-1 Cov P^-T with the multinomial covariance
// Cov = (diag(lambda) - lambda lambda^T) / divisor. Requires P nonsingular.
Eigen::VectorXd DeltaRuleVariance(const Eigen::MatrixXd& matrix,
                                  const Eigen::VectorXd& lambda,
                                  double divisor);

// Checks that `pi` is a finite probability vector of the given size, summing
// to one within 1e-9.
absl::Status CheckOnSimplex(const Eigen::VectorXd& pi, std::size_t k);

}  // namespace frr

#endif  // FRR_DESIGN_H_
