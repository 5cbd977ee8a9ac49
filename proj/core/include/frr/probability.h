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

#ifndef FRR_PROBABILITY_H_
#define FRR_PROBABILITY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "absl/status/statusor.h"

namespace frr {

using Rational = boost::rational<std::int64_t>;

// Tolerance used for every "probabilities sum to one" check on inexact input.
inline constexpr double kProbabilitySumTolerance = 1e-12;

// A probability that remembers whether it is known exactly.
//
// Device probabilities (dice enumerations, 24-segment spinners) are rational
// by construction, and keeping them exact lets layouts hit their degree
// targets without floating-point drift. Values read from decimal numbers stay
// inexact and are compared with kProbabilitySumTolerance.
class Probability {
 public:
  Probability() : value_(0.0), exact_(Rational(0)) {}

  static Probability Exact(std::int64_t numerator, std::int64_t denominator);
  static Probability Exact(const Rational& r);
  static Probability FromDouble(double value);

  // Accepts "a/b", an integer "a", or a decimal literal. Rational and integer
  // strings are exact; decimal literals are not.
  static absl::StatusOr<Probability> Parse(std::string_view text);

  double value() const { return value_; }
  bool is_exact() const { return exact_.has_value(); }
  const std::optional<Rational>& exact() const { return exact_; }

  bool InUnitInterval() const;
  bool IsZero() const;
  bool IsPositive() const;

  // "a/b" for exact values, shortest round-trip decimal otherwise.
  std::string ToString() const;

  friend Probability operator+(const Probability& a, const Probability& b);
  friend Probability operator-(const Probability& a, const Probability& b);
  friend Probability operator*(const Probability& a, const Probability& b);
  friend Probability operator/(const Probability& a, std::int64_t divisor);
  friend bool operator==(const Probability& a, const Probability& b);

 private:
  Probability(double value, std::optional<Rational> exact)
      : value_(value), exact_(std::move(exact)) {}

  double value_;
  std::optional<Rational> exact_;
};

// Sum of a list of probabilities; exact when every term is exact.
Probability Sum(std::span<const Probability> terms);

// True when `total` equals one exactly (exact inputs) or within
// kProbabilitySumTolerance.
bool SumsToOne(const Probability& total);

}  // namespace frr

#endif  // FRR_PROBABILITY_H_
