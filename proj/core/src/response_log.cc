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

#include "frr/response_log.h"

#include <atomic>
#include <sstream>
#include <system_error>

#include "absl/strings/str_cat.h"
#include "frr/errors.h"

namespace frr {
namespace {

namespace fs = std::filesystem;

absl::Status IoError(const fs::path& path, std::string_view what) {
  return absl::InternalError(Cat(what, ": ", path.string()));
}

// Parses complete lines of `text`; returns the number of bytes consumed.
absl::StatusOr<std::uint64_t> ParseLines(std::string_view text,
                                         std::vector<ResponseRecord>* out) {
  std::uint64_t consumed = 0;
  while (true) {
    auto newline = text.find('\n', consumed);
    if (newline == std::string_view::npos) break;
    std::string_view line = text.substr(consumed, newline - consumed);
    if (!line.empty()) {
      auto doc = nlohmann::json::parse(line, nullptr, false);
      if (doc.is_discarded()) {
        return ParseError("corrupt response log line at byte ", consumed);
      }
      auto record = ResponseRecordFromJson(doc);
      if (!record.ok()) return record.status();
      out->push_back(*std::move(record));
    }
    consumed = newline + 1;
  }
  return consumed;
}

absl::StatusOr<std::string> ReadFrom(const fs::path& path,
                                     std::uint64_t offset) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::string();
  in.seekg(static_cast<std::streamoff>(offset));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status Count(const ResponseRecord& record,
                   const std::map<std::string, std::size_t>& categories,
                   TallySnapshot* snapshot) {
  auto it = categories.find(record.question_id);
  if (it == categories.end()) {
    return absl::NotFoundError(Cat(error_tag::kUnknownQuestion, ": ",
                                            record.question_id));
  }
  if (record.observed_category >= it->second) {
    return absl::OutOfRangeError(
        Cat(error_tag::kCategoryOutOfRange, ": category ",
                     record.observed_category + 1, " on a ", it->second,
                     "-category question"));
  }
  auto& counts = snapshot->counts[record.question_id];
  counts.resize(it->second, 0);
  ++counts[record.observed_category];
  ++snapshot->records;
  return absl::OkStatus();
}

TallySnapshot EmptySnapshot(
    const std::map<std::string, std::size_t>& categories) {
  TallySnapshot s;
  for (const auto& [id, k] : categories) s.counts[id].assign(k, 0);
  return s;
}

}  // namespace

nlohmann::json ResponseRecordToJson(const ResponseRecord& record) {
  return {{"survey_id", record.survey_id},
          {"question_id", record.question_id},
          {"observed_category", record.observed_category + 1},
          {"received_at", record.received_at}};
}

absl::StatusOr<ResponseRecord> ResponseRecordFromJson(
    const nlohmann::json& doc) {
  if (!doc.is_object() || doc.size() != kResponseRecordFields.size()) {
    return ParseError("response record must have exactly the fields ",
                      "survey_id, question_id, observed_category, received_at");
  }
  for (std::string_view field : kResponseRecordFields) {
    if (!doc.contains(field)) {
      return ParseError("response record lacks '", field, "'");
    }
  }
  if (!doc["survey_id"].is_string() || !doc["question_id"].is_string() ||
      !doc["received_at"].is_string() ||
      !doc["observed_category"].is_number_integer() ||
      doc["observed_category"].get<std::int64_t>() < 1) {
    return ParseError("response record has a mistyped field");
  }
  return ResponseRecord{
      doc["survey_id"].get<std::string>(), doc["question_id"].get<std::string>(),
      doc["observed_category"].get<std::size_t>() - 1,
      doc["received_at"].get<std::string>()};
}

ResponseLog::ResponseLog(fs::path path,
                         std::map<std::string, std::size_t> categories,
                         std::int64_t compact_every)
    : path_(std::move(path)),
      categories_(std::move(categories)),
      compact_every_(compact_every) {}

ResponseLog::~ResponseLog() {
  std::lock_guard<std::mutex> lock(writer_mu_);
  if (since_compaction_ > 0) {
    CompactLocked(*std::atomic_load(&snapshot_)).IgnoreError();
  }
}

fs::path ResponseLog::index_path() const {
  return fs::path(path_.string() + ".index.json");
}

absl::StatusOr<std::unique_ptr<ResponseLog>> ResponseLog::Open(
    fs::path path, std::map<std::string, std::size_t> categories,
    std::int64_t compact_every) {
  std::unique_ptr<ResponseLog> log(new ResponseLog(
      std::move(path), std::move(categories), std::max<std::int64_t>(1, compact_every)));

  std::error_code ec;
  const std::uint64_t size =
      fs::exists(log->path_) ? fs::file_size(log->path_, ec) : 0;
  if (ec) return IoError(log->path_, "cannot stat response log");

  // Start from the index when it is consistent with the log.
  TallySnapshot snapshot = EmptySnapshot(log->categories_);
  std::ifstream index_in(log->index_path());
  if (index_in) {
    auto index = nlohmann::json::parse(index_in, nullptr, false);
    if (!index.is_discarded() && index.is_object() &&
        index.value("log_bytes", std::uint64_t{0}) <= size &&
        index.contains("counts") && index["counts"].is_object()) {
      TallySnapshot from_index = EmptySnapshot(log->categories_);
      bool usable = true;
      for (const auto& [qid, counts] : index["counts"].items()) {
        auto it = log->categories_.find(qid);
        if (it == log->categories_.end() || !counts.is_array() ||
            counts.size() != it->second) {
          usable = false;
          break;
        }
        from_index.counts[qid] = counts.get<std::vector<std::int64_t>>();
      }
      if (usable) {
        from_index.records = index.value("records", std::int64_t{0});
        from_index.log_bytes = index.value("log_bytes", std::uint64_t{0});
        snapshot = std::move(from_index);
      }
    }
  }

  auto tail = ReadFrom(log->path_, snapshot.log_bytes);
  if (!tail.ok()) return tail.status();
  std::vector<ResponseRecord> records;
  auto consumed = ParseLines(*tail, &records);
  if (!consumed.ok()) return consumed.status();
  for (const auto& r : records) {
    if (auto s = Count(r, log->categories_, &snapshot); !s.ok()) return s;
  }
  snapshot.log_bytes += *consumed;
  if (snapshot.log_bytes < size) {
    // Drop a torn trailing write so the next append starts on a fresh line.
    fs::resize_file(log->path_, snapshot.log_bytes, ec);
    if (ec) return IoError(log->path_, "cannot truncate torn response log");
  }

  log->out_.open(log->path_, std::ios::binary | std::ios::app);
  if (!log->out_) return IoError(log->path_, "cannot open response log");
  std::atomic_store(&log->snapshot_, std::make_shared<const TallySnapshot>(
                                         std::move(snapshot)));
  return log;
}

absl::Status ResponseLog::Append(std::span<const ResponseRecord> records) {
  if (records.empty()) return absl::OkStatus();
  std::lock_guard<std::mutex> lock(writer_mu_);
  auto next = std::make_shared<TallySnapshot>(*std::atomic_load(&snapshot_));
  std::string buffer;
  for (const ResponseRecord& r : records) {
    if (auto s = Count(r, categories_, next.get()); !s.ok()) return s;
    absl::StrAppend(&buffer, ResponseRecordToJson(r).dump(), "\n");
  }
  out_.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  out_.flush();
  if (!out_) return IoError(path_, "write to response log failed");
  next->log_bytes += buffer.size();
  std::atomic_store(&snapshot_, std::shared_ptr<const TallySnapshot>(next));

  since_compaction_ += static_cast<std::int64_t>(records.size());
  if (since_compaction_ >= compact_every_) return CompactLocked(*next);
  return absl::OkStatus();
}

std::shared_ptr<const TallySnapshot> ResponseLog::Snapshot() const {
  return std::atomic_load(&snapshot_);
}

absl::Status ResponseLog::Compact() {
  std::lock_guard<std::mutex> lock(writer_mu_);
  return CompactLocked(*std::atomic_load(&snapshot_));
}

absl::Status ResponseLog::CompactLocked(const TallySnapshot& snapshot) {
  nlohmann::json index = {{"log_bytes", snapshot.log_bytes},
                          {"records", snapshot.records},
                          {"counts", snapshot.counts}};
  const fs::path tmp = fs::path(index_path().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << index.dump() << "\n";
    if (!out) return IoError(tmp, "cannot write index");
  }
  std::error_code ec;
  fs::rename(tmp, index_path(), ec);
  if (ec) return IoError(index_path(), "cannot replace index");
  since_compaction_ = 0;
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ResponseRecord>> ResponseLog::ReadAll(
    const fs::path& path) {
  auto text = ReadFrom(path, 0);
  if (!text.ok()) return text.status();
  std::vector<ResponseRecord> records;
  auto consumed = ParseLines(*text, &records);
  if (!consumed.ok()) return consumed.status();
  return records;
}

absl::StatusOr<TallySnapshot> ResponseLog::Rebuild(
    const fs::path& path, const std::map<std::string, std::size_t>& categories) {
  auto records = ReadAll(path);
  if (!records.ok()) return records.status();
  TallySnapshot snapshot = EmptySnapshot(categories);
  for (const auto& r : *records) {
    if (auto s = Count(r, categories, &snapshot); !s.ok()) return s;
  }
  return snapshot;
}

}  // namespace frr
