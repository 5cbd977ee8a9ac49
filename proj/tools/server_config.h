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

// Survey server settings. Sources, later ones winning:
//   1. built-in defaults
//   2. a JSON config file:
//        {"host": "127.0.0.1", "port": 8080, "data_dir": "frr-data",
//         "admin_token": "...", "timestamp_granularity_s": 3600,
//         "interleave": 3, "compact_every": 256}
//   3. FRR_PORT and FRR_DATA_DIR environment variables
//   4. command-line flags

#ifndef FRR_TOOLS_SERVER_CONFIG_H_
#define FRR_TOOLS_SERVER_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "absl/status/statusor.h"

namespace frr {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir = "frr-data";
  // Empty disables the admin check.
  std::string admin_token;
  std::int64_t timestamp_granularity_s = 3600;
  int interleave = 3;
  std::int64_t compact_every = 256;
};

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

// Reads the process environment.
std::optional<std::string> ProcessEnv(const char* name);

absl::StatusOr<ServerConfig> LoadServerConfig(
    const std::optional<std::filesystem::path>& file,
    const EnvLookup& env = ProcessEnv);

}  // namespace frr

#endif  // FRR_TOOLS_SERVER_CONFIG_H_
