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

#include "frr/probability.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/strip.h"
#include "frr/errors.h"

namespace frr {
namespace {

using Wide = __int128;

// Denominators are capped so that products of two operands stay well inside
// 128 bits before reduction.
constexpr std::int64_t kMaxParsedMagnitude = std::int64_t{1} << 40;

Wide WideGcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Reduces num/den and narrows to int64, or returns nullopt on overflow.
std::optional<Rational> Narrow(Wide num, Wide den) {
  if (den == 0) return std::nullopt;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = WideGcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr Wide kMax = std::numeric_limits<std::int64_t>::max();
  if (num > kMax || num < -kMax || den > kMax) return std::nullopt;
  return Rational(static_cast<std::int64_t>(num),
                  static_cast<std::int64_t>(den));
}

double ToDouble(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

absl::StatusOr<std::int64_t> ParseInteger(std::string_view text) {
  text = ToStd(absl::StripAsciiWhitespace(ToAbsl(text)));
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return ParseError("not an integer: '", text, "'");
  }
  if (out > kMaxParsedMagnitude || out < -kMaxParsedMagnitude) {
    return ParseError("integer out of supported range: '", text, "'");
  }
  return out;
}

}  // namespace

Probability Probability::Exact(std::int64_t numerator,
                               std::int64_t denominator) {
  return Exact(Rational(numerator, denominator));
}

Probability Probability::Exact(const Rational& r) {
  return Probability(ToDouble(r), r);
}

Probability Probability::FromDouble(double value) {
  return Probability(value, std::nullopt);
}

absl::StatusOr<Probability> Probability::Parse(std::string_view text) {
  text = ToStd(absl::StripAsciiWhitespace(ToAbsl(text)));
  if (text.empty()) return ParseError("empty probability");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = ParseInteger(text.substr(0, slash));
    if (!num.ok()) return num.status();
    auto den = ParseInteger(text.substr(slash + 1));
    if (!den.ok()) return den.status();
    if (*den == 0) return ParseError("zero denominator in '", text, "'");
    return Exact(*num, *den);
  }
  if (text.find_first_of(".eE") == std::string_view::npos) {
    auto whole = ParseInteger(text);
    if (!whole.ok()) return whole.status();
    return Exact(*whole, 1);
  }
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    return ParseError("not a probability: '", text, "'");
  }
  return FromDouble(value);
}

bool Probability::InUnitInterval() const {
  if (exact_) return *exact_ >= Rational(0) && *exact_ <= Rational(1);
  return value_ >= 0.0 && value_ <= 1.0;
}

bool Probability::IsZero() const {
  return exact_ ? exact_->numerator() == 0 : value_ == 0.0;
}

bool Probability::IsPositive() const {
  return exact_ ? exact_->numerator() > 0 : value_ > 0.0;
}

std::string Probability::ToString() const {
  if (exact_) {
    if (exact_->denominator() == 1) return Cat(exact_->numerator());
    return Cat(exact_->numerator(), "/", exact_->denominator());
  }
  return absl::StrFormat("%.17g", value_);
}

Probability operator+(const Probability& a, const Probability& b) {
  if (a.exact_ && b.exact_) {
    Wide num = Wide{a.exact_->numerator()} * b.exact_->denominator() +
               Wide{b.exact_->numerator()} * a.exact_->denominator();
    Wide den = Wide{a.exact_->denominator()} * b.exact_->denominator();
    if (auto r = Narrow(num, den)) return Probability::Exact(*r);
  }
  return Probability::FromDouble(a.value_ + b.value_);
}

Probability operator-(const Probability& a, const Probability& b) {
  if (a.exact_ && b.exact_) {
    Wide num = Wide{a.exact_->numerator()} * b.exact_->denominator() -
               Wide{b.exact_->numerator()} * a.exact_->denominator();
    Wide den = Wide{a.exact_->denominator()} * b.exact_->denominator();
    if (auto r = Narrow(num, den)) return Probability::Exact(*r);
  }
  return Probability::FromDouble(a.value_ - b.value_);
}

Probability operator*(const Probability& a, const Probability& b) {
  if (a.exact_ && b.exact_) {
    Wide num = Wide{a.exact_->numerator()} * b.exact_->numerator();
    Wide den = Wide{a.exact_->denominator()} * b.exact_->denominator();
    if (auto r = Narrow(num, den)) return Probability::Exact(*r);
  }
  return Probability::FromDouble(a.value_ * b.value_);
}

Probability operator/(const Probability& a, std::int64_t divisor) {
  if (a.exact_ && divisor != 0) {
    if (auto r = Narrow(a.exact_->numerator(),
                        Wide{a.exact_->denominator()} * divisor)) {
      return Probability::Exact(*r);
    }
  }
  return Probability::FromDouble(a.value_ / static_cast<double>(divisor));
}

bool operator==(const Probability& a, const Probability& b) {
  if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
  return a.value_ == b.value_;
}

Probability Sum(std::span<const Probability> terms) {
  Probability total = Probability::Exact(0, 1);
  for (const auto& t : terms) total = total + t;
  return total;
}

bool SumsToOne(const Probability& total) {
  if (total.is_exact()) return *total.exact() == Rational(1);
  return std::abs(total.value() - 1.0) <= kProbabilitySumTolerance;
}

std::string_view ErrorTag(const absl::Status& status) {
  std::string_view message = ToStd(status.message());
  auto colon = message.find(':');
  if (colon == std::string_view::npos) return {};
  return message.substr(0, colon);
}

}  // namespace frr
