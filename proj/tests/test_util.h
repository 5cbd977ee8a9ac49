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

#ifndef FRR_TESTS_TEST_UTIL_H_
#define FRR_TESTS_TEST_UTIL_H_

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <string_view>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "absl/status/statusor.h"
#include "frr/design.h"
#include "frr/errors.h"

namespace frr::testing {

// Unwraps a StatusOr, aborting the test binary with the message otherwise.
template <typename T>
T Unwrap(absl::StatusOr<T> value) {
  if (!value.ok()) {
    std::cerr << "unexpected error: " << value.status() << "\n";
    std::abort();
  }
  return *std::move(value);
}

MATCHER_P(HasTag, tag, "") {
  return ErrorTag(arg) == std::string_view(tag);
}

inline BinaryDesign DiceDesign() {
  return Unwrap(BinaryDesign::Create(Probability::Exact(27, 36),
                                     Probability::Exact(6, 36),
                                     Probability::Exact(3, 36)));
}

inline QuantDesign SpinnerDesign() {
  return Unwrap(QuantDesign::Create(
      Probability::Exact(3, 4),
      std::vector<Probability>(6, Probability::Exact(1, 24))));
}

// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device device;
    path_ = std::filesystem::temp_directory_path() /
            ("frr-test-" + std::to_string(device()) + "-" +
             std::to_string(device()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace frr::testing

#endif  // FRR_TESTS_TEST_UTIL_H_
