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

#ifndef FRR_REPORT_IO_H_
#define FRR_REPORT_IO_H_

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "absl/status/statusor.h"
#include "frr/design_io.h"
#include "frr/estimation.h"
#include "frr/response_log.h"

namespace frr {

// Parses a `category,count` CSV. The category column holds either a 1-based
// category number or one of `labels`; unlisted categories count zero and a
// category may appear on several rows (counts add up).
absl::StatusOr<ResponseTally> ParseTallyCsv(
    std::istream& in, const std::vector<std::string>& labels);

std::string TallyToCsv(const ResponseTally& tally,
                       const std::vector<std::string>& labels);

nlohmann::json TallyToJson(const ResponseTally& tally,
                           const std::vector<std::string>& labels);

// Reads the {"counts": [...]} document produced by TallyToJson.
absl::StatusOr<ResponseTally> TallyFromJson(const nlohmann::json& doc,
                                            std::size_t k);

// Counts the answers to `question_id`. An empty id is accepted when every
// record belongs to the same question.
absl::StatusOr<ResponseTally> TallyFromRecords(
    std::span<const ResponseRecord> records, const std::string& question_id,
    std::size_t k);

// By extension: ".json" is a TallyToJson document, ".ndjson" a response log
// (filtered by `question_id`), anything else a `category,count` CSV.
absl::StatusOr<ResponseTally> ReadTallyFile(
    const std::filesystem::path& path, const std::vector<std::string>& labels,
    const std::string& question_id = "");

// Closed-form estimator for binary and quant designs, EstimateGeneral for
// custom matrices.
absl::StatusOr<EstimateReport> EstimateForDesign(const ResponseTally& tally,
                                                 const DesignSpec& design,
                                                 EstimateOptions options = {});

// {pi_raw, pi_projected, variance, ci, flags, n, level, labels,
//  design_digest}. Flags use 1-based categories.
nlohmann::json EstimateReportToJson(const EstimateReport& report,
                                    const std::vector<std::string>& labels,
                                    const std::string& design_digest);

}  // namespace frr

#endif  // FRR_REPORT_IO_H_
