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

// Design documents.
//
//   {"type": "binary", "p_truth": "3/4", "p_forced": ["1/6", "1/12"]}
//   {"type": "quant", "k": 6, "p_truth": "3/4", "p_forced": "1/24",
//    "labels": ["0", "1 time", ...]}
//   {"type": "custom", "k": 2, "matrix": [[0.9, 0.2], [0.1, 0.8]]}
//
// Probabilities are JSON numbers or strings; "a/b" strings are exact. A quant
// design accepts either a k-element p_forced array or a single value shared by
// all k categories. Custom matrices are row-major with rows = observed answer.

#ifndef FRR_DESIGN_IO_H_
#define FRR_DESIGN_IO_H_

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "absl/status/statusor.h"
#include "frr/design.h"

namespace frr {

struct CustomDesign {
  MisclassificationDesign design;
  std::vector<std::string> labels;
};

using DesignSpec = std::variant<BinaryDesign, QuantDesign, CustomDesign>;

absl::StatusOr<DesignSpec> DesignFromJson(const nlohmann::json& doc);
absl::StatusOr<DesignSpec> ReadDesignFile(const std::filesystem::path& path);

// Canonical document; exact probabilities are written as "a/b" strings.
nlohmann::json DesignToJson(const DesignSpec& spec);

// Hex SHA-256 of the canonical document.
std::string DesignDigest(const DesignSpec& spec);

MisclassificationDesign BuildMatrix(const DesignSpec& spec);
std::vector<std::string> DesignLabels(const DesignSpec& spec);
std::size_t DesignCategories(const DesignSpec& spec);

// Parses a single probability from a JSON number or string.
absl::StatusOr<Probability> ProbabilityFromJson(const nlohmann::json& value);

}  // namespace frr

#endif  // FRR_DESIGN_IO_H_
