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

#include "frr/report_io.h"

#include <charconv>
#include <fstream>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "frr/errors.h"

namespace frr {
namespace {

absl::Status TallyError(std::size_t line, std::string_view why) {
  return absl::InvalidArgumentError(
      Cat(error_tag::kInvalidTally, ": line ", line, ": ", why));
}

std::optional<std::int64_t> ToInt(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

nlohmann::json ToArray(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) out.push_back(v(j));
  return out;
}

}  // namespace

absl::StatusOr<ResponseTally> ParseTallyCsv(
    std::istream& in, const std::vector<std::string>& labels) {
  std::vector<std::int64_t> counts(labels.size(), 0);
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = ToStd(absl::StripAsciiWhitespace(line));
    if (row.empty() || row.front() == '#') continue;
    std::vector<absl::string_view> fields = absl::StrSplit(ToAbsl(row), ',');
    if (fields.size() != 2) return TallyError(line_no, "expected 2 fields");
    std::string_view category = ToStd(absl::StripAsciiWhitespace(fields[0]));
    std::string_view count = ToStd(absl::StripAsciiWhitespace(fields[1]));
    if (!saw_header) {
      saw_header = true;
      if (absl::AsciiStrToLower(ToAbsl(category)) == "category" &&
          absl::AsciiStrToLower(ToAbsl(count)) == "count") {
        continue;
      }
      return TallyError(line_no, "missing `category,count` header");
    }
    std::optional<std::size_t> index;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (labels[j] == category) index = j;
    }
    if (!index) {
      auto number = ToInt(category);
      if (number && *number >= 1 &&
          static_cast<std::size_t>(*number) <= labels.size()) {
        index = static_cast<std::size_t>(*number - 1);
      }
    }
    if (!index) {
      return TallyError(line_no,
                        Cat("unknown category '", category, "'"));
    }
    auto value = ToInt(count);
    if (!value || *value < 0) {
      return TallyError(line_no, "count must be a nonnegative integer");
    }
    counts[*index] += *value;
  }
  if (!saw_header) return TallyError(line_no, "empty tally file");
  return ResponseTally::Create(std::move(counts));
}

std::string TallyToCsv(const ResponseTally& tally,
                       const std::vector<std::string>& labels) {
  std::string out = "category,count\n";
  for (std::size_t j = 0; j < tally.k(); ++j) {
    absl::StrAppend(&out, j < labels.size() ? labels[j] : Cat(j + 1),
                    ",", tally.counts()[j], "\n");
  }
  return out;
}

nlohmann::json TallyToJson(const ResponseTally& tally,
                           const std::vector<std::string>& labels) {
  return {{"counts", tally.counts()}, {"n", tally.n()}, {"labels", labels}};
}

absl::StatusOr<ResponseTally> TallyFromJson(const nlohmann::json& doc,
                                            std::size_t k) {
  if (!doc.is_object() || !doc.contains("counts") ||
      !doc["counts"].is_array()) {
    return absl::InvalidArgumentError(
        Cat(error_tag::kInvalidTally, ": expected an object with counts"));
  }
  std::vector<std::int64_t> counts;
  for (const auto& c : doc["counts"]) {
    if (!c.is_number_integer()) {
      return absl::InvalidArgumentError(
          Cat(error_tag::kInvalidTally, ": counts must be integers"));
    }
    counts.push_back(c.get<std::int64_t>());
  }
  if (counts.size() != k) {
    return DimensionMismatch("tally has ", counts.size(),
                             " categories, design has ", k);
  }
  return ResponseTally::Create(std::move(counts));
}

absl::StatusOr<ResponseTally> TallyFromRecords(
    std::span<const ResponseRecord> records, const std::string& question_id,
    std::size_t k) {
  std::string wanted = question_id;
  if (wanted.empty()) {
    for (const ResponseRecord& r : records) {
      if (wanted.empty()) {
        wanted = r.question_id;
      } else if (r.question_id != wanted) {
        return absl::InvalidArgumentError(
            Cat(error_tag::kInvalidTally,
                ": log holds several questions; name one"));
      }
    }
  }
  std::vector<std::int64_t> counts(k, 0);
  for (const ResponseRecord& r : records) {
    if (r.question_id != wanted) continue;
    if (r.observed_category >= k) {
      return absl::OutOfRangeError(Cat(error_tag::kCategoryOutOfRange,
                                       ": category ", r.observed_category + 1,
                                       " on a ", k, "-category design"));
    }
    ++counts[r.observed_category];
  }
  return ResponseTally::Create(std::move(counts));
}

absl::StatusOr<ResponseTally> ReadTallyFile(
    const std::filesystem::path& path, const std::vector<std::string>& labels,
    const std::string& question_id) {
  if (path.extension() == ".ndjson") {
    if (!std::filesystem::exists(path)) {
      return absl::NotFoundError(
          Cat(error_tag::kInvalidTally, ": cannot open ", path.string()));
    }
    auto records = ResponseLog::ReadAll(path);
    if (!records.ok()) return records.status();
    return TallyFromRecords(*records, question_id, labels.size());
  }
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(
        Cat(error_tag::kInvalidTally, ": cannot open ", path.string()));
  }
  if (path.extension() == ".json") {
    auto doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded()) {
      return ParseError(path.string(), " is not valid JSON");
    }
    return TallyFromJson(doc, labels.size());
  }
  return ParseTallyCsv(in, labels);
}

absl::StatusOr<EstimateReport> EstimateForDesign(const ResponseTally& tally,
                                                 const DesignSpec& design,
                                                 EstimateOptions options) {
  if (const auto* b = std::get_if<BinaryDesign>(&design)) {
    return EstimateBinary(tally, *b, options);
  }
  if (const auto* q = std::get_if<QuantDesign>(&design)) {
    return EstimateQuant(tally, *q, options);
  }
  return EstimateGeneral(tally, std::get<CustomDesign>(design).design,
                         options);
}

nlohmann::json EstimateReportToJson(const EstimateReport& report,
                                    const std::vector<std::string>& labels,
                                    const std::string& design_digest) {
  nlohmann::json ci = nlohmann::json::array();
  for (const Interval& i : report.ci) ci.push_back({i.lower, i.upper});
  nlohmann::json flags = nlohmann::json::array();
  for (const EstimateFlag& f : report.flags) {
    flags.push_back({{"category", f.category + 1},
                     {"kind", std::string(FlagKindName(f.kind))}});
  }
  return {{"pi_raw", ToArray(report.pi_raw)},
          {"pi_projected", ToArray(report.pi_projected)},
          {"variance", ToArray(report.variance)},
          {"ci", std::move(ci)},
          {"level", report.level},
          {"flags", std::move(flags)},
          {"n", report.n},
          {"labels", labels},
          {"design_digest", design_digest}};
}

}  // namespace frr
