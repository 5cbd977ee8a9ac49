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

#include "frr/design.h"

#include <array>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "frr/errors.h"

namespace frr {
namespace {

constexpr double kColumnTolerance = kProbabilitySumTolerance;
constexpr double kSimplexTolerance = 1e-9;

absl::Status CheckUnit(const Probability& p, std::string_view name) {
  if (!std::isfinite(p.value()) || !p.InUnitInterval()) {
    return InvalidDesign(name, " = ", p.ToString(), " is not in [0, 1]");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<BinaryDesign> BinaryDesign::Create(Probability p_truth,
                                                  Probability p_forced_yes,
                                                  Probability p_forced_no) {
  for (auto [p, name] : {std::pair{&p_truth, "p_truth"},
                         std::pair{&p_forced_yes, "p_forced_yes"},
                         std::pair{&p_forced_no, "p_forced_no"}}) {
    if (auto s = CheckUnit(*p, name); !s.ok()) return s;
  }
  std::array<Probability, 3> terms = {p_truth, p_forced_yes, p_forced_no};
  Probability total = Sum(terms);
  if (!SumsToOne(total)) {
    return InvalidDesign("p_truth + p_forced_yes + p_forced_no = ",
                         total.ToString(), ", expected 1");
  }
  if (!p_truth.IsPositive()) {
    return InvalidDesign("p_truth must be positive");
  }
  return BinaryDesign(p_truth, p_forced_yes, p_forced_no);
}

absl::StatusOr<QuantDesign> QuantDesign::Create(
    Probability p_truth, std::vector<Probability> p_forced,
    std::vector<std::string> labels) {
  const std::size_t k = p_forced.size();
  if (k < 2) return InvalidDesign("need at least 2 categories, got ", k);
  if (auto s = CheckUnit(p_truth, "p_truth"); !s.ok()) return s;
  for (std::size_t j = 0; j < k; ++j) {
    if (auto s = CheckUnit(p_forced[j], Cat("p_forced[", j + 1, "]"));
        !s.ok()) {
      return s;
    }
  }
  Probability total = p_truth + Sum(p_forced);
  if (!SumsToOne(total)) {
    return InvalidDesign("p_truth + sum(p_forced) = ", total.ToString(),
                         ", expected 1");
  }
  if (!p_truth.IsPositive()) {
    return InvalidDesign("p_truth must be positive");
  }
  if (labels.empty()) {
    for (std::size_t j = 1; j <= k; ++j) labels.push_back(Cat(j));
  }
  if (labels.size() != k) {
    return InvalidDesign("expected ", k, " labels, got ", labels.size());
  }
  return QuantDesign(p_truth, std::move(p_forced), std::move(labels));
}

std::string_view DesignSourceName(DesignSource source) {
  switch (source) {
    case DesignSource::kBinary:
      return "binary";
    case DesignSource::kQuant:
      return "quant";
    case DesignSource::kCustom:
      return "custom";
  }
  return "custom";
}

absl::StatusOr<MisclassificationDesign> MakeCustomDesign(
    const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 2) {
    return InvalidDesign("matrix must be square with k >= 2, got ",
                         matrix.rows(), "x", matrix.cols());
  }
  MisclassificationDesign design{matrix, DesignSource::kCustom, std::nullopt};
  ValidationReport report = ValidateDesign(design);
  if (!report.entries_in_range) {
    return InvalidDesign("matrix entries must lie in [0, 1]");
  }
  if (!report.column_stochastic) {
    return InvalidDesign("columns must sum to 1 (max error ",
                         report.max_column_error, ")");
  }
  if (!report.nonsingular) {
    return SingularDesign("matrix is singular (condition number ",
                          report.condition_number, ")");
  }
  return design;
}

MisclassificationDesign BuildBinaryMatrix(const BinaryDesign& design) {
  const double p1 = design.p_truth().value();
  const double p2 = design.p_forced_yes().value();
  const double p3 = design.p_forced_no().value();
  Eigen::MatrixXd m(2, 2);
  m << (design.p_truth() + design.p_forced_yes()).value(), p2,
      p3, (design.p_truth() + design.p_forced_no()).value();
  return {std::move(m), DesignSource::kBinary, p1};
}

MisclassificationDesign BuildQuantMatrix(const QuantDesign& design) {
  const auto k = static_cast<Eigen::Index>(design.k());
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index o = 0; o < k; ++o) {
    const Probability& forced = design.p_forced()[o];
    const double diagonal = (design.p_truth() + forced).value();
    for (Eigen::Index t = 0; t < k; ++t) {
      m(o, t) = o == t ? diagonal : forced.value();
    }
  }
  return {std::move(m), DesignSource::kQuant, design.p_truth().value()};
}

absl::StatusOr<BinaryDesign> DiceProbabilities(
    const std::set<int>& truthful_outcomes, const std::set<int>& yes_outcomes,
    const std::set<int>& no_outcomes) {
  std::array<int, 13> owner{};  // 0 = unassigned, 1..3 = set index
  const std::array<const std::set<int>*, 3> sets = {
      &truthful_outcomes, &yes_outcomes, &no_outcomes};
  for (int s = 0; s < 3; ++s) {
    for (int outcome : *sets[s]) {
      if (outcome < 2 || outcome > 12) {
        return InvalidPartition("die sum ", outcome, " is outside 2..12");
      }
      if (owner[outcome] != 0) {
        return InvalidPartition("die sum ", outcome,
                                " appears in more than one set");
      }
      owner[outcome] = s + 1;
    }
  }
  for (int sum = 2; sum <= 12; ++sum) {
    if (owner[sum] == 0) {
      return InvalidPartition("die sum ", sum, " is not assigned");
    }
  }
  std::array<std::int64_t, 3> hits{};
  for (int a = 1; a <= 6; ++a) {
    for (int b = 1; b <= 6; ++b) ++hits[owner[a + b] - 1];
  }
  return BinaryDesign::Create(Probability::Exact(hits[0], 36),
                              Probability::Exact(hits[1], 36),
                              Probability::Exact(hits[2], 36));
}

std::vector<std::string> ValidationReport::Errors() const {
  std::vector<std::string> out;
  if (!entries_in_range) out.push_back("matrix entries outside [0, 1]");
  if (!column_stochastic) {
    out.push_back(absl::StrFormat(
        "columns do not sum to 1 (max error %.3g)", max_column_error));
  }
  if (!nonsingular) {
    out.push_back(absl::StrFormat("matrix is singular (condition number %.3g)",
                                  condition_number));
  }
  return out;
}

std::vector<std::string> ValidationReport::Warnings() const {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < diagonal_dominant.size(); ++j) {
    if (!diagonal_dominant[j]) {
      out.push_back(Cat("category ", j + 1,
                                 ": diagonal entry is not above 1/2"));
    }
  }
  for (std::size_t j = 0; j < category_protected.size(); ++j) {
    if (!category_protected[j]) {
      out.push_back(Cat(
          "asymmetric design: answer ", j + 1,
          " is never forced, so it reveals the respondent's true status"));
    }
  }
  return out;
}

ValidationReport ValidateDesign(const MisclassificationDesign& design) {
  const Eigen::MatrixXd& m = design.matrix;
  ValidationReport report;
  if (m.rows() != m.cols() || m.rows() == 0) return report;
  const Eigen::Index k = m.rows();

  report.entries_in_range =
      m.allFinite() && (m.array() >= 0.0).all() && (m.array() <= 1.0).all();

  const Eigen::RowVectorXd column_sums = m.colwise().sum();
  report.max_column_error = (column_sums.array() - 1.0).abs().maxCoeff();
  report.column_stochastic = report.max_column_error <= kColumnTolerance;

  report.diagonal_dominant.resize(k);
  report.category_protected.resize(k);
  report.dominance_pass = true;
  report.symmetric = true;
  for (Eigen::Index j = 0; j < k; ++j) {
    report.diagonal_dominant[j] = m(j, j) > 0.5;
    report.dominance_pass = report.dominance_pass && report.diagonal_dominant[j];
    report.category_protected[j] = (m.row(j).array() > 0.0).all();
    report.symmetric = report.symmetric && report.category_protected[j];
  }
  report.direct_questioning =
      m.allFinite() &&
      (m - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() <=
          kColumnTolerance;
  if (report.direct_questioning) {
    report.category_protected.assign(k, true);
    report.symmetric = true;
  }

  if (m.allFinite()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    report.condition_number = smallest > 0.0
                                  ? sv(0) / smallest
                                  : std::numeric_limits<double>::infinity();
    report.nonsingular = report.condition_number <= kMaxConditionNumber;
  } else {
    report.condition_number = std::numeric_limits<double>::infinity();
  }
  return report;
}

Eigen::VectorXd DeltaRuleVariance(const Eigen::MatrixXd& matrix,
                                  const Eigen::VectorXd& lambda,
                                  double divisor) {
  Eigen::MatrixXd cov = lambda.asDiagonal();
  cov -= lambda * lambda.transpose();
  cov /= divisor;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(matrix);
  // A = P^-1 Cov, then P^-1 A^T = P^-1 Cov^T P^-T = P^-1 Cov P^-T.
  Eigen::MatrixXd left = lu.solve(cov);
  Eigen::MatrixXd full = lu.solve(left.transpose().eval());
  return full.diagonal().cwiseMax(0.0);
}

absl::Status CheckOnSimplex(const Eigen::VectorXd& pi, std::size_t k) {
  if (static_cast<std::size_t>(pi.size()) != k) {
    return InvalidPi("expected ", k, " proportions, got ", pi.size());
  }
  if (!pi.allFinite() || (pi.array() < 0.0).any() || (pi.array() > 1.0).any()) {
    return InvalidPi("proportions must lie in [0, 1]");
  }
  if (std::abs(pi.sum() - 1.0) > kSimplexTolerance) {
    return InvalidPi("proportions sum to ", pi.sum(), ", expected 1");
  }
  return absl::OkStatus();
}

absl::StatusOr<EfficiencyReport> DesignEfficiency(
    const MisclassificationDesign& design, const Eigen::VectorXd& pi,
    std::size_t n) {
  if (auto s = CheckOnSimplex(pi, design.k()); !s.ok()) return s;
  if (n < 2) return InsufficientData("sample size must be at least 2");
  const double dn = static_cast<double>(n);
  const Eigen::VectorXd lambda = design.matrix * pi;

  EfficiencyReport report;
  Eigen::VectorXd variance;
  if (design.truth_probability) {
    const double p = *design.truth_probability;
    variance = (lambda.array() * (1.0 - lambda.array()) / (dn * p * p)).matrix();
  } else {
    if (!ValidateDesign(design).nonsingular) {
      return SingularDesign("design matrix is not invertible");
    }
    variance = DeltaRuleVariance(design.matrix, lambda, dn);
  }
  for (Eigen::Index j = 0; j < pi.size(); ++j) {
    const double direct = pi(j) * (1.0 - pi(j)) / dn;
    report.variance.push_back(variance(j));
    report.direct_variance.push_back(direct);
    report.inflation_ratio.push_back(
        direct > 0.0 ? std::optional<double>(variance(j) / direct)
                     : std::nullopt);
  }
  return report;
}

}  // namespace frr
