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

// Append-only store of observed answers, one newline-delimited JSON file per
// survey:
//
//   {"observed_category":2,"question_id":"q1","received_at":"2026-10-16T08:00:00Z","survey_id":"s1"}
//
// A record holds the observed answer only. It has no field for the spinner
// outcome and no session reference, so neither can ever be persisted.
//
// Next to the log sits a small index ("<log>.index.json") with per-question
// counts and the byte offset it covers. Opening a log loads the index and
// replays only the records appended after it; the index is rewritten every
// `compact_every` appends. Deleting the index is always safe.

#ifndef FRR_RESPONSE_LOG_H_
#define FRR_RESPONSE_LOG_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "absl/status/statusor.h"

namespace frr {

struct ResponseRecord {
  std::string survey_id;
  std::string question_id;
  std::size_t observed_category = 0;  // 0-based; 1-based on disk
  std::string received_at;            // ISO-8601 UTC, coarsened

  friend bool operator==(const ResponseRecord&,
                         const ResponseRecord&) = default;
};

// The complete, ordered list of fields a persisted record may carry.
inline constexpr std::array<std::string_view, 4> kResponseRecordFields = {
    "survey_id", "question_id", "observed_category", "received_at"};

nlohmann::json ResponseRecordToJson(const ResponseRecord& record);
absl::StatusOr<ResponseRecord> ResponseRecordFromJson(
    const nlohmann::json& doc);

// Per-question answer counts, keyed by question id.
struct TallySnapshot {
  std::map<std::string, std::vector<std::int64_t>> counts;
  std::int64_t records = 0;
  std::uint64_t log_bytes = 0;
};

class ResponseLog {
 public:
  // `categories` maps each question id to its number of answer categories.
  static absl::StatusOr<std::unique_ptr<ResponseLog>> Open(
      std::filesystem::path path, std::map<std::string, std::size_t> categories,
      std::int64_t compact_every = 256);

  ~ResponseLog();
  ResponseLog(const ResponseLog&) = delete;
  ResponseLog& operator=(const ResponseLog&) = delete;

  // Appends records atomically with respect to other writers. Every record
  // must name a known question and an in-range category.
  absl::Status Append(std::span<const ResponseRecord> records);

  // Consistent view of the counts; never blocks on writers.
  std::shared_ptr<const TallySnapshot> Snapshot() const;

  // Rewrites the index to cover the whole log.
  absl::Status Compact();

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path index_path() const;

  // Reads every complete record in a log file. A trailing partial line (torn
  // write) is ignored.
  static absl::StatusOr<std::vector<ResponseRecord>> ReadAll(
      const std::filesystem::path& path);

  // Counts computed from the log file alone, ignoring any index.
  static absl::StatusOr<TallySnapshot> Rebuild(
      const std::filesystem::path& path,
      const std::map<std::string, std::size_t>& categories);

 private:
  ResponseLog(std::filesystem::path path,
              std::map<std::string, std::size_t> categories,
              std::int64_t compact_every);

  absl::Status CompactLocked(const TallySnapshot& snapshot);

  std::filesystem::path path_;
  std::map<std::string, std::size_t> categories_;
  std::int64_t compact_every_;

  std::mutex writer_mu_;
  std::ofstream out_;
  std::int64_t since_compaction_ = 0;
  std::shared_ptr<const TallySnapshot> snapshot_;
};

}  // namespace frr

#endif  // FRR_RESPONSE_LOG_H_
