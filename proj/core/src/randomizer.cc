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

#include "frr/randomizer.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "frr/errors.h"

namespace frr {
namespace {

// Inexact layouts accumulate floating-point widths; the running total must
// land this close to 360 before the last boundary is pinned to 360.
constexpr double kInexactTurnTolerance = 1e-9;

struct Piece {
  Probability fraction;
  Directive directive;
};

absl::StatusOr<SpinnerLayout> Assemble(const std::vector<Piece>& pieces,
                                       std::size_t k) {
  std::vector<Segment> segments;
  segments.reserve(pieces.size());
  const Probability turn = Probability::Exact(360, 1);
  Probability cumulative = Probability::Exact(0, 1);
  double start = 0.0;
  for (const Piece& piece : pieces) {
    if (piece.fraction.IsZero()) continue;
    cumulative = cumulative + piece.fraction;
    const double end = (cumulative * turn).value();
    segments.push_back({start, end, piece.directive});
    start = end;
  }
  if (segments.empty()) return UnrealizableLayout("no segment has positive width");
  if (!cumulative.is_exact() &&
      std::abs(segments.back().end_deg - kFullTurn) > kInexactTurnTolerance) {
    return UnrealizableLayout("segments cover ", segments.back().end_deg,
                              " degrees, expected 360");
  }
  segments.back().end_deg = kFullTurn;
  return SpinnerLayout::Create(std::move(segments), k);
}

absl::StatusOr<SpinnerLayout> Interleaved(const Probability& p_truth,
                                          const std::vector<Probability>& forced,
                                          int interleave) {
  const std::size_t k = forced.size();
  if (interleave < 1) {
    return UnrealizableLayout("interleave must be at least 1 to place the ",
                              p_truth.ToString(), " truthful share");
  }
  if (std::all_of(forced.begin(), forced.end(),
                  [](const Probability& p) { return p.IsZero(); })) {
    return Assemble({{p_truth, Directive::Truthful()}}, k);
  }
  const Probability sub_area =
      p_truth / static_cast<std::int64_t>(k * static_cast<std::size_t>(interleave));
  std::vector<Piece> pieces;
  for (std::size_t j = 0; j < k; ++j) {
    for (int i = 0; i < interleave; ++i) {
      pieces.push_back({sub_area, Directive::Truthful()});
    }
    pieces.push_back({forced[j], Directive::Forced(j)});
  }
  return Assemble(pieces, k);
}

}  // namespace

absl::StatusOr<SpinnerLayout> SpinnerLayout::Create(
    std::vector<Segment> segments, std::size_t k) {
  if (segments.empty()) return UnrealizableLayout("layout has no segments");
  double expected_start = 0.0;
  for (const Segment& s : segments) {
    if (s.start_deg != expected_start) {
      return UnrealizableLayout("segment starting at ", s.start_deg,
                                " leaves a gap or overlap at ", expected_start);
    }
    if (!(s.end_deg > s.start_deg)) {
      return UnrealizableLayout("segment at ", s.start_deg,
                                " has non-positive width");
    }
    if (!s.directive.is_truthful() && s.directive.category >= k) {
      return UnrealizableLayout("forced category ", s.directive.category + 1,
                                " exceeds k = ", k);
    }
    expected_start = s.end_deg;
  }
  if (expected_start != kFullTurn) {
    return UnrealizableLayout("segments end at ", expected_start,
                              ", expected 360");
  }
  return SpinnerLayout(std::move(segments), k);
}

double SpinnerLayout::Degrees(const Directive& directive) const {
  double total = 0.0;
  for (const Segment& s : segments_) {
    if (s.directive == directive) total += s.width();
  }
  return total;
}

absl::StatusOr<SpinnerLayout> LayoutFromQuant(const QuantDesign& design,
                                              int interleave) {
  return Interleaved(design.p_truth(), design.p_forced(), interleave);
}

absl::StatusOr<SpinnerLayout> LayoutFromBinary(const BinaryDesign& design,
                                               int interleave) {
  return Interleaved(design.p_truth(),
                     {design.p_forced_yes(), design.p_forced_no()}, interleave);
}

absl::StatusOr<Directive> OutcomeAt(const SpinnerLayout& layout, double angle) {
  if (!(angle >= 0.0 && angle < kFullTurn)) {
    return absl::OutOfRangeError(Cat(
        error_tag::kAngleOutOfRange, ": angle ", angle, " is outside [0, 360)"));
  }
  const auto& segments = layout.segments();
  // First segment whose start is beyond the angle; the owner precedes it.
  auto it = std::upper_bound(
      segments.begin(), segments.end(), angle,
      [](double a, const Segment& s) { return a < s.start_deg; });
  return std::prev(it)->directive;
}

SpinOutcome Spin(const SpinnerLayout& layout, RandomStream& stream) {
  double angle = stream.Uniform01() * kFullTurn;
  if (angle >= kFullTurn) angle = std::nextafter(kFullTurn, 0.0);
  return {angle, *OutcomeAt(layout, angle)};
}

nlohmann::json DirectiveToJson(const Directive& directive) {
  if (directive.is_truthful()) return {{"kind", "truthful"}};
  return {{"kind", "forced"}, {"category", directive.category + 1}};
}

nlohmann::json LayoutToJson(const SpinnerLayout& layout) {
  nlohmann::json out = nlohmann::json::array();
  for (const Segment& s : layout.segments()) {
    out.push_back({{"start_deg", s.start_deg},
                   {"end_deg", s.end_deg},
                   {"directive", DirectiveToJson(s.directive)}});
  }
  return out;
}

absl::StatusOr<SpinnerLayout> LayoutFromJson(const nlohmann::json& doc,
                                             std::size_t k) {
  if (!doc.is_array()) return ParseError("layout must be a JSON array");
  std::vector<Segment> segments;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("start_deg") ||
        !item.contains("end_deg") || !item.contains("directive") ||
        !item["start_deg"].is_number() || !item["end_deg"].is_number()) {
      return ParseError("segment needs start_deg, end_deg and directive");
    }
    const auto& d = item["directive"];
    Directive directive;
    if (d.value("kind", "") == "truthful") {
      directive = Directive::Truthful();
    } else if (d.value("kind", "") == "forced" && d.contains("category") &&
               d["category"].is_number_integer() &&
               d["category"].get<std::int64_t>() >= 1) {
      directive = Directive::Forced(d["category"].get<std::size_t>() - 1);
    } else {
      return ParseError("unrecognized directive ", d.dump());
    }
    segments.push_back({item["start_deg"].get<double>(),
                        item["end_deg"].get<double>(), directive});
  }
  return SpinnerLayout::Create(std::move(segments), k);
}

}  // namespace frr
