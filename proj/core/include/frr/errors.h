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

#ifndef FRR_ERRORS_H_
#define FRR_ERRORS_H_

#include <string>
#include <string_view>
#include <type_traits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace frr {

// Every error produced by the toolkit carries a stable kebab-case tag as the
// first token of its message ("invalid-design: ..."), so callers and the HTTP
// front end can branch on the tag without parsing free text.
namespace error_tag {
inline constexpr char kInvalidDesign[] = "invalid-design";
inline constexpr char kInvalidPartition[] = "invalid-partition";
inline constexpr char kInvalidPi[] = "invalid-pi";
inline constexpr char kInsufficientData[] = "insufficient-data";
inline constexpr char kDimensionMismatch[] = "dimension-mismatch";
inline constexpr char kSingularDesign[] = "singular-design";
inline constexpr char kUnrealizableLayout[] = "unrealizable-layout";
inline constexpr char kAngleOutOfRange[] = "out-of-range-angle";
inline constexpr char kInvalidTally[] = "invalid-tally";
inline constexpr char kDuplicateId[] = "duplicate-id";
inline constexpr char kInvalidConfig[] = "invalid-config";
inline constexpr char kUnknownSurvey[] = "unknown-survey";
inline constexpr char kUnknownQuestion[] = "unknown-question";
inline constexpr char kUnknownSession[] = "unknown-session";
inline constexpr char kCategoryOutOfRange[] = "out-of-range-category";
inline constexpr char kAlreadyCompleted[] = "already-completed";
inline constexpr char kSurveyLocked[] = "survey-locked";
inline constexpr char kParseError[] = "parse-error";
}  // namespace error_tag

namespace internal {

// absl::StrCat does not take std::string_view in this absl configuration.
template <typename T>
decltype(auto) AsAlphaNum(const T& value) {
  if constexpr (std::is_convertible_v<const T&, std::string_view> &&
                !std::is_convertible_v<const T&, absl::string_view>) {
    std::string_view v = value;
    return absl::string_view(v.data(), v.size());
  } else {
    return (value);
  }
}

}  // namespace internal

// absl::StrCat that also accepts std::string_view arguments.
template <typename... Args>
std::string Cat(const Args&... args) {
  return absl::StrCat(internal::AsAlphaNum(args)...);
}

inline std::string_view ToStd(absl::string_view v) { return {v.data(), v.size()}; }
inline absl::string_view ToAbsl(std::string_view v) { return {v.data(), v.size()}; }

template <typename... Args>
absl::Status InvalidDesign(const Args&... args) {
  return absl::InvalidArgumentError(
      Cat(error_tag::kInvalidDesign, ": ", args...));
}

template <typename... Args>
absl::Status InvalidPartition(const Args&... args) {
  return absl::InvalidArgumentError(
      Cat(error_tag::kInvalidPartition, ": ", args...));
}

template <typename... Args>
absl::Status InvalidPi(const Args&... args) {
  return absl::InvalidArgumentError(
      Cat(error_tag::kInvalidPi, ": ", args...));
}

template <typename... Args>
absl::Status InsufficientData(const Args&... args) {
  return absl::FailedPreconditionError(
      Cat(error_tag::kInsufficientData, ": ", args...));
}

template <typename... Args>
absl::Status DimensionMismatch(const Args&... args) {
  return absl::InvalidArgumentError(
      Cat(error_tag::kDimensionMismatch, ": ", args...));
}

template <typename... Args>
absl::Status SingularDesign(const Args&... args) {
  return absl::FailedPreconditionError(
      Cat(error_tag::kSingularDesign, ": ", args...));
}

template <typename... Args>
absl::Status UnrealizableLayout(const Args&... args) {
  return absl::InvalidArgumentError(
      Cat(error_tag::kUnrealizableLayout, ": ", args...));
}

template <typename... Args>
absl::Status ParseError(const Args&... args) {
  return absl::InvalidArgumentError(
      Cat(error_tag::kParseError, ": ", args...));
}

// Returns the tag prefix of a toolkit error message, or an empty view.
std::string_view ErrorTag(const absl::Status& status);

}  // namespace frr

#endif  // FRR_ERRORS_H_
