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

#include "frr/simulation.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "frr/digest.h"
#include "frr/errors.h"

namespace frr {
namespace {

std::size_t DrawCategory(const std::vector<double>& cumulative,
                         RandomStream& stream) {
  const double u = stream.Uniform01();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) return cumulative.size() - 1;
  return static_cast<std::size_t>(it - cumulative.begin());
}

std::vector<double> Cumulative(const Eigen::VectorXd& pi) {
  std::vector<double> out(static_cast<std::size_t>(pi.size()));
  double running = 0.0;
  for (Eigen::Index j = 0; j < pi.size(); ++j) {
    running += pi(j);
    out[j] = running;
  }
  return out;
}

absl::StatusOr<SpinnerLayout> LayoutFor(const DesignSpec& design,
                                        int interleave) {
  if (const auto* b = std::get_if<BinaryDesign>(&design)) {
    return LayoutFromBinary(*b, interleave);
  }
  if (const auto* q = std::get_if<QuantDesign>(&design)) {
    return LayoutFromQuant(*q, interleave);
  }
  return InvalidDesign("custom designs have no spinner layout to simulate");
}

absl::StatusOr<EstimateReport> EstimateClosedForm(const ResponseTally& tally,
                                                  const DesignSpec& design,
                                                  double level) {
  if (const auto* b = std::get_if<BinaryDesign>(&design)) {
    return EstimateBinary(tally, *b, {level});
  }
  return EstimateQuant(tally, std::get<QuantDesign>(design), {level});
}

struct Replication {
  Eigen::VectorXd lambda_hat;
  Eigen::VectorXd pi_raw;
  std::vector<bool> covered;
  bool flagged = false;
};

}  // namespace

absl::Status PopulationSpec::Validate(std::size_t k) const {
  if (auto s = CheckOnSimplex(pi, k); !s.ok()) return s;
  if (n < 1) {
    return absl::InvalidArgumentError(
        Cat(error_tag::kInvalidConfig, ": sample size must be positive"));
  }
  if (!(sp_rate >= 0.0 && sp_rate <= 1.0)) {
    return absl::InvalidArgumentError(
        Cat(error_tag::kInvalidConfig, ": sp_rate must lie in [0, 1]"));
  }
  if (safe_category >= k) {
    return absl::InvalidArgumentError(Cat(error_tag::kInvalidConfig,
                                          ": safe category ", safe_category + 1,
                                          " exceeds k = ", k));
  }
  return absl::OkStatus();
}

std::string PopulationSpec::Digest() const {
  nlohmann::json doc = {{"n", n},
                        {"sp_rate", sp_rate},
                        {"safe_category", safe_category + 1},
                        {"pi", std::vector<double>(pi.data(),
                                                   pi.data() + pi.size())}};
  return Sha256Hex(doc.dump());
}

std::size_t DefaultSafeCategory(const DesignSpec& design) {
  return std::holds_alternative<BinaryDesign>(design) ? kNo : 0;
}

std::size_t SimulateResponse(const Respondent& respondent,
                             const SpinnerLayout& layout,
                             RandomStream& stream) {
  if (respondent.self_protective) return respondent.safe_category;
  const Directive directive = Spin(layout, stream).directive;
  return directive.is_truthful() ? respondent.true_status : directive.category;
}

absl::StatusOr<SimResult> SimulateSurvey(const PopulationSpec& spec,
                                         const SpinnerLayout& layout,
                                         std::uint64_t seed,
                                         std::uint64_t replication_id) {
  if (auto s = spec.Validate(layout.k()); !s.ok()) return s;
  RandomStream stream = RandomStream(seed).Split(replication_id);
  const std::vector<double> cumulative = Cumulative(spec.pi);
  std::vector<std::int64_t> counts(layout.k(), 0);
  for (std::int64_t i = 0; i < spec.n; ++i) {
    Respondent r;
    r.true_status = DrawCategory(cumulative, stream);
    r.self_protective = stream.Uniform01() < spec.sp_rate;
    r.safe_category = spec.safe_category;
    ++counts[SimulateResponse(r, layout, stream)];
  }
  auto tally = ResponseTally::Create(std::move(counts));
  if (!tally.ok()) return tally.status();
  return SimResult{*std::move(tally), seed, replication_id};
}

Eigen::VectorXd ExpectedAnswerDistribution(const MisclassificationDesign& design,
                                           const PopulationSpec& spec) {
  Eigen::VectorXd lambda = (1.0 - spec.sp_rate) * (design.matrix * spec.pi);
  lambda(static_cast<Eigen::Index>(spec.safe_category)) += spec.sp_rate;
  return lambda;
}

absl::StatusOr<CalibrationReport> Calibrate(const PopulationSpec& spec,
                                            const DesignSpec& design,
                                            std::int64_t replications,
                                            std::uint64_t seed,
                                            CalibrationOptions options) {
  if (replications < kMinCalibrationReplications) {
    return absl::InvalidArgumentError(Cat(
        "need at least ", kMinCalibrationReplications, " replications"));
  }
  if (spec.n < 2) return InsufficientData("sample size must be at least 2");
  auto layout = LayoutFor(design, options.interleave);
  if (!layout.ok()) return layout.status();
  if (auto s = spec.Validate(layout->k()); !s.ok()) return s;

  const MisclassificationDesign matrix = BuildMatrix(design);
  const auto k = static_cast<Eigen::Index>(layout->k());
  const auto reps = static_cast<std::size_t>(replications);
  std::vector<Replication> results(reps);
  std::vector<absl::Status> failures(reps);

  auto run = [&](std::size_t r) {
    auto sim = SimulateSurvey(spec, *layout, seed, r);
    if (!sim.ok()) {
      failures[r] = sim.status();
      return;
    }
    auto est = EstimateClosedForm(sim->tally, design, options.level);
    if (!est.ok()) {
      failures[r] = est.status();
      return;
    }
    Replication& out = results[r];
    out.lambda_hat = sim->tally.Proportions();
    out.pi_raw = est->pi_raw;
    out.flagged = !est->flags.empty();
    out.covered.resize(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < k; ++j) {
      out.covered[j] = est->ci[j].lower <= spec.pi(j) &&
                       spec.pi(j) <= est->ci[j].upper;
    }
  };

  unsigned threads = options.threads != 0
                         ? options.threads
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
  if (threads <= 1) {
    for (std::size_t r = 0; r < reps; ++r) run(r);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < reps; r += threads) run(r);
      });
    }
  }
  for (const auto& f : failures) {
    if (!f.ok()) return f;
  }

  const double p_truth = *matrix.truth_probability;
  const double dn = static_cast<double>(spec.n);
  const double dr = static_cast<double>(replications);
  const Eigen::VectorXd lambda = ExpectedAnswerDistribution(matrix, spec);
  const Eigen::VectorXd implied = matrix.matrix.partialPivLu().solve(lambda);

  CalibrationReport report;
  report.generator = std::string(RandomStream::kGeneratorName);
  report.seed = seed;
  report.spec_digest = spec.Digest();
  report.design_digest = DesignDigest(design);
  report.replications = replications;
  report.n = spec.n;
  report.sp_rate = spec.sp_rate;
  report.safe_category = spec.safe_category;
  report.level = options.level;
  report.labels = DesignLabels(design);

  for (const Replication& rep : results) {
    report.max_sum_identity_error = std::max(
        report.max_sum_identity_error, std::abs(rep.pi_raw.sum() - 1.0));
    if (rep.flagged) ++report.flagged_replications;
  }
  for (Eigen::Index j = 0; j < k; ++j) {
    CategoryCalibration c;
    c.true_pi = spec.pi(j);
    c.expected_lambda = lambda(j);
    c.predicted_bias =
        spec.sp_rate > 0.0 ? implied(j) - spec.pi(j) : 0.0;
    c.theoretical_variance =
        lambda(j) * (1.0 - lambda(j)) / (dn * p_truth * p_truth);
    c.bias_se = std::sqrt(c.theoretical_variance / dr);
    c.lambda_se = std::sqrt(lambda(j) * (1.0 - lambda(j)) / dn / dr);

    double sum_pi = 0.0, sum_lambda = 0.0, covered = 0.0;
    for (const Replication& rep : results) {
      sum_pi += rep.pi_raw(j);
      sum_lambda += rep.lambda_hat(j);
      covered += rep.covered[j] ? 1.0 : 0.0;
    }
    c.mean_pi_raw = sum_pi / dr;
    c.mean_lambda_hat = sum_lambda / dr;
    c.bias = c.mean_pi_raw - c.true_pi;
    c.coverage = covered / dr;
    double squares = 0.0;
    for (const Replication& rep : results) {
      const double d = rep.pi_raw(j) - c.mean_pi_raw;
      squares += d * d;
    }
    c.empirical_variance = squares / (dr - 1.0);
    c.variance_relative_error =
        c.theoretical_variance > 0.0
            ? std::abs(c.empirical_variance - c.theoretical_variance) /
                  c.theoretical_variance
            : 0.0;
    report.categories.push_back(c);
  }
  return report;
}

nlohmann::json CalibrationReportToJson(const CalibrationReport& report) {
  nlohmann::json categories = nlohmann::json::array();
  for (std::size_t j = 0; j < report.categories.size(); ++j) {
    const CategoryCalibration& c = report.categories[j];
    categories.push_back({
        {"category", j + 1},
        {"label", j < report.labels.size() ? report.labels[j] : ""},
        {"true_pi", c.true_pi},
        {"expected_lambda", c.expected_lambda},
        {"mean_lambda_hat", c.mean_lambda_hat},
        {"lambda_se", c.lambda_se},
        {"mean_pi_raw", c.mean_pi_raw},
        {"bias", c.bias},
        {"predicted_bias", c.predicted_bias},
        {"bias_se", c.bias_se},
        {"empirical_variance", c.empirical_variance},
        {"theoretical_variance", c.theoretical_variance},
        {"variance_relative_error", c.variance_relative_error},
        {"coverage", c.coverage},
    });
  }
  return {{"metadata",
           {{"generator", report.generator},
            {"seed", report.seed},
            {"spec_digest", report.spec_digest},
            {"design_digest", report.design_digest}}},
          {"replications", report.replications},
          {"n", report.n},
          {"sp_rate", report.sp_rate},
          {"safe_category", report.safe_category + 1},
          {"level", report.level},
          {"max_sum_identity_error", report.max_sum_identity_error},
          {"flagged_replications", report.flagged_replications},
          {"categories", std::move(categories)}};
}

std::string CalibrationReportToTable(const CalibrationReport& report) {
  std::string out = absl::StrFormat(
      "generator %s  seed %d  R %d  n %d  sp_rate %.3f\n", report.generator,
      report.seed, report.replications, report.n, report.sp_rate);
  absl::StrAppendFormat(&out, "%-18s %9s %10s %10s %10s %8s %11s %11s %8s\n",
                        "category", "true_pi", "mean_pi", "bias", "pred_bias",
                        "z_bias", "emp_var", "theory_var", "cover");
  for (std::size_t j = 0; j < report.categories.size(); ++j) {
    const CategoryCalibration& c = report.categories[j];
    const std::string label =
        j < report.labels.size() ? report.labels[j] : Cat(j + 1);
    absl::StrAppendFormat(
        &out, "%-18s %9.5f %10.6f %10.6f %10.6f %8.2f %11.4e %11.4e %8.4f\n",
        label, c.true_pi, c.mean_pi_raw, c.bias, c.predicted_bias,
        c.bias_se > 0.0 ? (c.bias - c.predicted_bias) / c.bias_se : 0.0,
        c.empirical_variance, c.theoretical_variance, c.coverage);
  }
  absl::StrAppendFormat(&out, "max |sum(pi_raw) - 1| = %.3g\n",
                        report.max_sum_identity_error);
  absl::StrAppend(&out,
                  "z_bias = (bias - pred_bias) / SE of the mean estimate\n");
  return out;
}

}  // namespace frr
