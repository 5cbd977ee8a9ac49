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

#include "frr/design_io.h"

#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "frr/digest.h"
#include "frr/errors.h"

namespace frr {
namespace {

using nlohmann::json;

nlohmann::json ProbabilityToJson(const Probability& p) {
  if (p.is_exact()) return p.ToString();
  return p.value();
}

absl::StatusOr<std::vector<std::string>> LabelsFromJson(const json& doc) {
  std::vector<std::string> labels;
  if (!doc.contains("labels")) return labels;
  const json& raw = doc["labels"];
  if (!raw.is_array()) return InvalidDesign("labels must be an array");
  for (const auto& l : raw) {
    if (!l.is_string()) return InvalidDesign("labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  return labels;
}

absl::Status CheckDeclaredK(const json& doc, std::size_t k) {
  if (!doc.contains("k")) return absl::OkStatus();
  if (!doc["k"].is_number_integer() || doc["k"].get<std::int64_t>() < 0 ||
      static_cast<std::size_t>(doc["k"].get<std::int64_t>()) != k) {
    return InvalidDesign("declared k does not match the design (", k, ")");
  }
  return absl::OkStatus();
}

absl::StatusOr<DesignSpec> BinaryFromJson(const json& doc) {
  if (!doc.contains("p_truth") || !doc.contains("p_forced")) {
    return InvalidDesign("binary design needs p_truth and p_forced");
  }
  auto truth = ProbabilityFromJson(doc["p_truth"]);
  if (!truth.ok()) return truth.status();
  const json& forced = doc["p_forced"];
  if (!forced.is_array() || forced.size() != 2) {
    return InvalidDesign("binary p_forced must be a [yes, no] pair");
  }
  auto yes = ProbabilityFromJson(forced[0]);
  if (!yes.ok()) return yes.status();
  auto no = ProbabilityFromJson(forced[1]);
  if (!no.ok()) return no.status();
  if (auto s = CheckDeclaredK(doc, 2); !s.ok()) return s;
  if (doc.contains("labels")) {
    return InvalidDesign(
        "binary designs always use the labels yes/no; set display labels on "
        "the survey question instead");
  }
  auto design = BinaryDesign::Create(*truth, *yes, *no);
  if (!design.ok()) return design.status();
  return DesignSpec(*std::move(design));
}

absl::StatusOr<DesignSpec> QuantFromJson(const json& doc) {
  if (!doc.contains("p_truth") || !doc.contains("p_forced")) {
    return InvalidDesign("quant design needs p_truth and p_forced");
  }
  auto truth = ProbabilityFromJson(doc["p_truth"]);
  if (!truth.ok()) return truth.status();
  auto labels = LabelsFromJson(doc);
  if (!labels.ok()) return labels.status();

  std::vector<Probability> forced;
  const json& raw = doc["p_forced"];
  if (raw.is_array()) {
    for (const auto& v : raw) {
      auto p = ProbabilityFromJson(v);
      if (!p.ok()) return p.status();
      forced.push_back(*p);
    }
  } else {
    if (!doc.contains("k") || !doc["k"].is_number_integer() ||
        doc["k"].get<std::int64_t>() < 2) {
      return InvalidDesign("a shared p_forced value needs an integer k >= 2");
    }
    auto p = ProbabilityFromJson(raw);
    if (!p.ok()) return p.status();
    forced.assign(doc["k"].get<std::size_t>(), *p);
  }
  if (auto s = CheckDeclaredK(doc, forced.size()); !s.ok()) return s;
  auto design = QuantDesign::Create(*truth, std::move(forced), *labels);
  if (!design.ok()) return design.status();
  return DesignSpec(*std::move(design));
}

absl::StatusOr<DesignSpec> CustomFromJson(const json& doc) {
  if (!doc.contains("matrix") || !doc["matrix"].is_array()) {
    return InvalidDesign("custom design needs a matrix");
  }
  const json& rows = doc["matrix"];
  const auto k = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index o = 0; o < k; ++o) {
    const json& row = rows[o];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != k) {
      return InvalidDesign("matrix must be square");
    }
    for (Eigen::Index t = 0; t < k; ++t) {
      auto p = ProbabilityFromJson(row[t]);
      if (!p.ok()) return p.status();
      m(o, t) = p->value();
    }
  }
  if (auto s = CheckDeclaredK(doc, static_cast<std::size_t>(k)); !s.ok()) {
    return s;
  }
  auto design = MakeCustomDesign(m);
  if (!design.ok()) return design.status();
  auto labels = LabelsFromJson(doc);
  if (!labels.ok()) return labels.status();
  if (labels->empty()) {
    for (Eigen::Index j = 1; j <= k; ++j) labels->push_back(Cat(j));
  }
  if (static_cast<Eigen::Index>(labels->size()) != k) {
    return InvalidDesign("expected ", k, " labels, got ", labels->size());
  }
  return DesignSpec(CustomDesign{*std::move(design), *std::move(labels)});
}

}  // namespace

absl::StatusOr<Probability> ProbabilityFromJson(const nlohmann::json& value) {
  if (value.is_string()) {
    auto p = Probability::Parse(value.get<std::string>());
    if (!p.ok()) return InvalidDesign(p.status().message());
    return p;
  }
  if (value.is_number_integer()) {
    return Probability::Exact(value.get<std::int64_t>(), 1);
  }
  if (value.is_number()) return Probability::FromDouble(value.get<double>());
  return InvalidDesign("probability must be a number or an \"a/b\" string");
}

absl::StatusOr<DesignSpec> DesignFromJson(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
    return InvalidDesign("design document needs a string \"type\" field");
  }
  const std::string type = doc["type"].get<std::string>();
  if (type == "binary") return BinaryFromJson(doc);
  if (type == "quant") return QuantFromJson(doc);
  if (type == "custom") return CustomFromJson(doc);
  return InvalidDesign("unknown design type '", type, "'");
}

absl::StatusOr<DesignSpec> ReadDesignFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(
        Cat("cannot open design file ", path.string()));
  }
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    return ParseError("design file ", path.string(), " is not valid JSON");
  }
  return DesignFromJson(doc);
}

nlohmann::json DesignToJson(const DesignSpec& spec) {
  json doc;
  if (const auto* b = std::get_if<BinaryDesign>(&spec)) {
    doc["type"] = "binary";
    doc["k"] = 2;
    doc["p_truth"] = ProbabilityToJson(b->p_truth());
    doc["p_forced"] = json::array({ProbabilityToJson(b->p_forced_yes()),
                                   ProbabilityToJson(b->p_forced_no())});
  } else if (const auto* q = std::get_if<QuantDesign>(&spec)) {
    doc["type"] = "quant";
    doc["k"] = q->k();
    doc["p_truth"] = ProbabilityToJson(q->p_truth());
    json forced = json::array();
    for (const auto& p : q->p_forced()) forced.push_back(ProbabilityToJson(p));
    doc["p_forced"] = std::move(forced);
    doc["labels"] = q->labels();
  } else {
    const auto& c = std::get<CustomDesign>(spec);
    doc["type"] = "custom";
    doc["k"] = c.design.k();
    json rows = json::array();
    for (Eigen::Index o = 0; o < c.design.matrix.rows(); ++o) {
      json row = json::array();
      for (Eigen::Index t = 0; t < c.design.matrix.cols(); ++t) {
        row.push_back(c.design.matrix(o, t));
      }
      rows.push_back(std::move(row));
    }
    doc["matrix"] = std::move(rows);
    doc["labels"] = c.labels;
  }
  return doc;
}

std::string DesignDigest(const DesignSpec& spec) {
  return Sha256Hex(DesignToJson(spec).dump());
}

MisclassificationDesign BuildMatrix(const DesignSpec& spec) {
  if (const auto* b = std::get_if<BinaryDesign>(&spec)) {
    return BuildBinaryMatrix(*b);
  }
  if (const auto* q = std::get_if<QuantDesign>(&spec)) {
    return BuildQuantMatrix(*q);
  }
  return std::get<CustomDesign>(spec).design;
}

std::vector<std::string> DesignLabels(const DesignSpec& spec) {
  if (std::holds_alternative<BinaryDesign>(spec)) {
    return BinaryDesign::DefaultLabels();
  }
  if (const auto* q = std::get_if<QuantDesign>(&spec)) return q->labels();
  return std::get<CustomDesign>(spec).labels;
}

std::size_t DesignCategories(const DesignSpec& spec) {
  if (std::holds_alternative<BinaryDesign>(spec)) return 2;
  if (const auto* q = std::get_if<QuantDesign>(&spec)) return q->k();
  return std::get<CustomDesign>(spec).design.k();
}

}  // namespace frr
