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

// Digital spinner: a disc of angular segments, each telling the respondent to
// answer truthfully or to give a fixed answer.
//
// Segments are half-open, [start_deg, end_deg), so every angle in [0, 360)
// belongs to exactly one segment. Layout export format (consumed verbatim by
// the browser questionnaire):
//
//   [{"start_deg": 0, "end_deg": 15, "directive": {"kind": "truthful"}},
//    {"start_deg": 45, "end_deg": 60,
//     "directive": {"kind": "forced", "category": 1}}, ...]
//
// Forced categories are 1-based in the export.

#ifndef FRR_RANDOMIZER_H_
#define FRR_RANDOMIZER_H_

#include <cstddef>
#include <vector>

#include <nlohmann/json.hpp>

#include "absl/status/statusor.h"
#include "frr/design.h"
#include "frr/random_stream.h"

namespace frr {

inline constexpr double kFullTurn = 360.0;
inline constexpr int kDefaultInterleave = 3;

struct Directive {
  enum class Kind { kTruthful, kForced };

  Kind kind = Kind::kTruthful;
  std::size_t category = 0;  // meaningful for kForced only, 0-based

  static Directive Truthful() { return {}; }
  static Directive Forced(std::size_t c) { return {Kind::kForced, c}; }

  bool is_truthful() const { return kind == Kind::kTruthful; }

  friend bool operator==(const Directive& a, const Directive& b) {
    return a.kind == b.kind &&
           (a.kind == Kind::kTruthful || a.category == b.category);
  }
};

struct Segment {
  double start_deg = 0.0;
  double end_deg = 0.0;
  Directive directive;

  double width() const { return end_deg - start_deg; }
};

class SpinnerLayout {
 public:
  // Segments must start at 0, be contiguous, have positive width and end at
  // exactly 360. Forced categories must be below `k`.
  static absl::StatusOr<SpinnerLayout> Create(std::vector<Segment> segments,
                                              std::size_t k);

  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t sub_area_count() const { return segments_.size(); }
  std::size_t k() const { return k_; }

  // Total degrees given to `directive`.
  double Degrees(const Directive& directive) const;

 private:
  SpinnerLayout(std::vector<Segment> s, std::size_t k)
      : segments_(std::move(s)), k_(k) {}

  std::vector<Segment> segments_;
  std::size_t k_;
};

struct SpinOutcome {
  double angle = 0.0;
  Directive directive;
};

// Lays out k repetitions of [`interleave` truthful sub-areas, forced(j)].
// Each truthful block covers p / k of the disc, each forced block p_j; forced
// blocks with zero probability are omitted, and a design with no forced mass
// is a single truthful segment. With k = 6, p = 3/4, p_j = 1/24 and
// interleave 3 this gives 24 sub-areas of 15 degrees.
absl::StatusOr<SpinnerLayout> LayoutFromQuant(
    const QuantDesign& design, int interleave = kDefaultInterleave);

// As LayoutFromQuant with forced categories yes (0) and no (1).
absl::StatusOr<SpinnerLayout> LayoutFromBinary(
    const BinaryDesign& design, int interleave = kDefaultInterleave);

// Directive of the segment owning `angle`; angle must be in [0, 360).
absl::StatusOr<Directive> OutcomeAt(const SpinnerLayout& layout, double angle);

// Draws an angle uniformly on [0, 360) and looks up its directive.
SpinOutcome Spin(const SpinnerLayout& layout, RandomStream& stream);

nlohmann::json LayoutToJson(const SpinnerLayout& layout);
absl::StatusOr<SpinnerLayout> LayoutFromJson(const nlohmann::json& doc,
                                             std::size_t k);

nlohmann::json DirectiveToJson(const Directive& directive);

}  // namespace frr

#endif  // FRR_RANDOMIZER_H_
