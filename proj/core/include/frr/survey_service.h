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

// Live questionnaire administration.
//
// The spinner runs on the respondent's device. The service hands out the
// layout and only ever receives the observed answer; answers are buffered per
// session and written to the survey's response log, without the session
// token, when the session completes. Until then an answer may be replaced.
//
// Data directory layout:
//   <id>.survey.json              survey configuration
//   <id>.responses.ndjson         append-only response log
//   <id>.responses.ndjson.index.json

#ifndef FRR_SURVEY_SERVICE_H_
#define FRR_SURVEY_SERVICE_H_

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "absl/status/statusor.h"
#include "frr/design_io.h"
#include "frr/estimation.h"
#include "frr/response_log.h"

namespace frr {

struct QuestionConfig {
  std::string question_id;
  std::string text;
  DesignSpec design;
  // Display labels; defaults to the design's labels.
  std::vector<std::string> labels;
};

struct SurveyConfig {
  std::string survey_id;
  std::string title;
  std::vector<QuestionConfig> questions;
  double ci_level = kDefaultConfidenceLevel;
};

absl::StatusOr<SurveyConfig> SurveyConfigFromJson(const nlohmann::json& doc);
nlohmann::json SurveyConfigToJson(const SurveyConfig& config);

struct Session {
  std::string token;
  std::string survey_id;
  std::chrono::system_clock::time_point created_at;
  bool completed = false;
};

struct SessionDocument {
  Session session;
  // {survey_id, title, session_token, instructions, questions: [{question_id,
  //  text, type, k, labels, layout}]}
  nlohmann::json questionnaire;
};

struct CreateResult {
  std::string survey_id;
  std::vector<std::string> warnings;
};

struct QuestionReport {
  std::string question_id;
  std::string design_digest;
  std::vector<std::string> labels;
  std::int64_t n = 0;
  absl::StatusOr<EstimateReport> estimate;
};

struct SurveyReport {
  std::string survey_id;
  std::vector<QuestionReport> questions;
};

nlohmann::json SurveyReportToJson(const SurveyReport& report);

struct ServiceOptions {
  std::filesystem::path data_dir;
  // received_at is rounded down to a multiple of this.
  std::chrono::seconds timestamp_granularity{3600};
  int interleave = 3;
  std::int64_t compact_every = 256;
  // Defaults to std::chrono::system_clock::now.
  std::function<std::chrono::system_clock::time_point()> clock;
};

// Formats `t` rounded down to `granularity` as ISO-8601 UTC.
std::string CoarsenTimestamp(std::chrono::system_clock::time_point t,
                             std::chrono::seconds granularity);

class SurveyService {
 public:
  // Creates the data directory if needed and reloads every stored survey.
  static absl::StatusOr<std::unique_ptr<SurveyService>> Open(
      ServiceOptions options);

  // Fails with duplicate-id or invalid-config. Asymmetric or non-dominant
  // designs are accepted with warnings.
  absl::StatusOr<CreateResult> CreateSurvey(SurveyConfig config);

  // Replaces a survey's configuration while no answer has been recorded.
  absl::StatusOr<CreateResult> UpdateSurvey(SurveyConfig config);

  absl::StatusOr<SurveyConfig> GetSurvey(const std::string& survey_id) const;
  std::vector<std::string> ListSurveys() const;

  absl::StatusOr<SessionDocument> OpenSession(const std::string& survey_id);

  // `category` is 0-based. Replaces an earlier answer to the same question
  // until the session completes.
  absl::Status RecordResponse(const std::string& token,
                              const std::string& question_id,
                              std::size_t category);

  // Writes the session's answers to the log and closes it for good.
  absl::Status CompleteSession(const std::string& token);

  absl::StatusOr<ResponseTally> ExportTally(const std::string& survey_id,
                                            const std::string& question_id) const;

  // Counts per question, as stored; questions without answers have n = 0.
  absl::StatusOr<TallySnapshot> SnapshotTallies(
      const std::string& survey_id) const;

  absl::StatusOr<SurveyReport> ComputeReport(const std::string& survey_id) const;

  std::filesystem::path LogPath(const std::string& survey_id) const;
  std::filesystem::path ConfigPath(const std::string& survey_id) const;

 private:
  struct SurveyState {
    SurveyConfig config;
    std::map<std::string, std::size_t> categories;
    std::unique_ptr<ResponseLog> log;
  };
  struct SessionState {
    std::string survey_id;
    std::chrono::system_clock::time_point created_at;
    bool completed = false;
    std::map<std::string, std::size_t> pending;
  };

  explicit SurveyService(ServiceOptions options);

  absl::StatusOr<CreateResult> Validate(const SurveyConfig& config) const;
  absl::StatusOr<std::shared_ptr<SurveyState>> Load(SurveyConfig config);
  absl::Status Persist(const SurveyConfig& config) const;
  std::shared_ptr<SurveyState> Find(const std::string& survey_id) const;
  // Requires sessions_mu_.
  bool HasPendingAnswersLocked(const std::string& survey_id) const;
  std::chrono::system_clock::time_point Now() const;

  ServiceOptions options_;

  mutable std::shared_mutex surveys_mu_;
  std::map<std::string, std::shared_ptr<SurveyState>> surveys_;

  mutable std::mutex sessions_mu_;
  std::unordered_map<std::string, SessionState> sessions_;
};

}  // namespace frr

#endif  // FRR_SURVEY_SERVICE_H_
