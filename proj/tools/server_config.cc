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

#include "server_config.h"

#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

#include "absl/strings/numbers.h"
#include "frr/errors.h"

namespace frr {
namespace {

absl::Status ConfigError(const std::string& what) {
  return absl::InvalidArgumentError(
      Cat(error_tag::kInvalidConfig, ": ", what));
}

absl::Status CheckPort(std::int64_t port) {
  if (port < 0 || port > 65535) {
    return ConfigError(Cat("port ", port, " is outside 0..65535"));
  }
  return absl::OkStatus();
}

}  // namespace

std::optional<std::string> ProcessEnv(const char* name) {
  const char* value = std::getenv(name);
  if (value == nullptr) return std::nullopt;
  return std::string(value);
}

absl::StatusOr<ServerConfig> LoadServerConfig(
    const std::optional<std::filesystem::path>& file, const EnvLookup& env) {
  ServerConfig config;
  if (file) {
    std::ifstream in(*file);
    if (!in) return ConfigError(Cat("cannot open ", file->string()));
    auto doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      return ConfigError(Cat(file->string(), " is not a JSON object"));
    }
    try {
      config.host = doc.value("host", config.host);
      config.port = doc.value("port", config.port);
      config.data_dir = doc.value("data_dir", config.data_dir.string());
      config.admin_token = doc.value("admin_token", config.admin_token);
      config.timestamp_granularity_s =
          doc.value("timestamp_granularity_s", config.timestamp_granularity_s);
      config.interleave = doc.value("interleave", config.interleave);
      config.compact_every = doc.value("compact_every", config.compact_every);
    } catch (const nlohmann::json::exception& e) {
      return ConfigError(Cat(file->string(), ": ", e.what()));
    }
  }
  if (auto port = env("FRR_PORT")) {
    int value = 0;
    if (!absl::SimpleAtoi(*port, &value)) {
      return ConfigError(Cat("FRR_PORT='", *port, "' is not an integer"));
    }
    config.port = value;
  }
  if (auto dir = env("FRR_DATA_DIR"); dir && !dir->empty()) {
    config.data_dir = *dir;
  }
  if (auto s = CheckPort(config.port); !s.ok()) return s;
  if (config.timestamp_granularity_s < 1) {
    return ConfigError("timestamp_granularity_s must be positive");
  }
  if (config.interleave < 1) return ConfigError("interleave must be >= 1");
  return config;
}

}  // namespace frr
