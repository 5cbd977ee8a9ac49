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

#include "frr/survey_service.h"

#include <ctime>
#include <fstream>
#include <random>
#include <set>

#include "absl/strings/escaping.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "frr/errors.h"
#include "frr/randomizer.h"
#include "frr/report_io.h"

namespace frr {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::string_view kConfigSuffix = ".survey.json";
constexpr std::string_view kLogSuffix = ".responses.ndjson";
constexpr std::size_t kMaxIdLength = 64;

constexpr std::string_view kInstructions =
    "Spin the wheel. If it stops on a blank area, answer the question "
    "honestly. If it stops on an area showing an answer, give that answer "
    "instead. Nobody but you can see where the wheel stopped.";

template <typename... Args>
absl::Status InvalidConfig(const Args&... args) {
  return absl::InvalidArgumentError(
      Cat(error_tag::kInvalidConfig, ": ", args...));
}

absl::Status UnknownSurvey(std::string_view id) {
  return absl::NotFoundError(
      Cat(error_tag::kUnknownSurvey, ": ", id));
}

absl::Status UnknownQuestion(std::string_view id) {
  return absl::NotFoundError(
      Cat(error_tag::kUnknownQuestion, ": ", id));
}

absl::Status UnknownSession() {
  return absl::NotFoundError(
      Cat(error_tag::kUnknownSession, ": no such session"));
}

bool ValidId(std::string_view id) {
  if (id.empty() || id.size() > kMaxIdLength) return false;
  for (char c : id) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
          c == '_')) {
      return false;
    }
  }
  return true;
}

std::string NewToken(std::size_t bytes) {
  std::random_device device;
  std::string raw(bytes, '\0');
  for (char& c : raw) c = static_cast<char>(device() & 0xff);
  return absl::BytesToHexString(raw);
}

std::vector<std::string> Labels(const QuestionConfig& q) {
  return q.labels.empty() ? DesignLabels(q.design) : q.labels;
}

absl::StatusOr<SpinnerLayout> LayoutFor(const DesignSpec& design,
                                        int interleave) {
  if (const auto* b = std::get_if<BinaryDesign>(&design)) {
    return LayoutFromBinary(*b, interleave);
  }
  if (const auto* q = std::get_if<QuantDesign>(&design)) {
    return LayoutFromQuant(*q, interleave);
  }
  return InvalidConfig("custom designs cannot be administered by spinner");
}

}  // namespace

absl::StatusOr<SurveyConfig> SurveyConfigFromJson(const json& doc) {
  if (!doc.is_object()) return InvalidConfig("survey must be a JSON object");
  SurveyConfig config;
  if (doc.contains("survey_id")) {
    if (!doc["survey_id"].is_string()) {
      return InvalidConfig("survey_id must be a string");
    }
    config.survey_id = doc["survey_id"].get<std::string>();
  }
  if (doc.contains("title") && doc["title"].is_string()) {
    config.title = doc["title"].get<std::string>();
  }
  if (doc.contains("ci_level")) {
    if (!doc["ci_level"].is_number()) {
      return InvalidConfig("ci_level must be a number");
    }
    config.ci_level = doc["ci_level"].get<double>();
  }
  if (!doc.contains("questions") || !doc["questions"].is_array()) {
    return InvalidConfig("survey needs a questions array");
  }
  for (const auto& q : doc["questions"]) {
    if (!q.is_object() || !q.contains("question_id") ||
        !q["question_id"].is_string() || !q.contains("design")) {
      return InvalidConfig("each question needs question_id and design");
    }
    const std::string question_id = q["question_id"].get<std::string>();
    auto design = DesignFromJson(q["design"]);
    if (!design.ok()) {
      return InvalidConfig("question ", question_id, ": ",
                           design.status().message());
    }
    QuestionConfig question{question_id, "", *std::move(design), {}};
    if (q.contains("text") && q["text"].is_string()) {
      question.text = q["text"].get<std::string>();
    }
    if (q.contains("labels")) {
      if (!q["labels"].is_array()) {
        return InvalidConfig("labels must be an array of strings");
      }
      for (const auto& l : q["labels"]) {
        if (!l.is_string()) {
          return InvalidConfig("labels must be an array of strings");
        }
        question.labels.push_back(l.get<std::string>());
      }
    }
    config.questions.push_back(std::move(question));
  }
  return config;
}

json SurveyConfigToJson(const SurveyConfig& config) {
  json questions = json::array();
  for (const auto& q : config.questions) {
    questions.push_back({{"question_id", q.question_id},
                         {"text", q.text},
                         {"design", DesignToJson(q.design)},
                         {"labels", Labels(q)}});
  }
  return {{"survey_id", config.survey_id},
          {"title", config.title},
          {"ci_level", config.ci_level},
          {"questions", std::move(questions)}};
}

json SurveyReportToJson(const SurveyReport& report) {
  json questions = json::array();
  for (const auto& q : report.questions) {
    if (q.estimate.ok()) {
      json entry = EstimateReportToJson(*q.estimate, q.labels, q.design_digest);
      entry["question_id"] = q.question_id;
      questions.push_back(std::move(entry));
    } else {
      questions.push_back({{"question_id", q.question_id},
                           {"design_digest", q.design_digest},
                           {"labels", q.labels},
                           {"n", q.n},
                           {"error", std::string(q.estimate.status().message())}});
    }
  }
  return {{"survey_id", report.survey_id}, {"questions", std::move(questions)}};
}

std::string CoarsenTimestamp(std::chrono::system_clock::time_point t,
                             std::chrono::seconds granularity) {
  using std::chrono::seconds;
  auto since_epoch =
      std::chrono::duration_cast<seconds>(t.time_since_epoch()).count();
  const auto step = std::max<std::int64_t>(1, granularity.count());
  since_epoch -= ((since_epoch % step) + step) % step;
  const std::time_t coarse = static_cast<std::time_t>(since_epoch);
  std::tm utc{};
  gmtime_r(&coarse, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

SurveyService::SurveyService(ServiceOptions options)
    : options_(std::move(options)) {
  if (!options_.clock) options_.clock = [] { return std::chrono::system_clock::now(); };
}

absl::StatusOr<std::unique_ptr<SurveyService>> SurveyService::Open(
    ServiceOptions options) {
  std::error_code ec;
  fs::create_directories(options.data_dir, ec);
  if (ec) {
    return absl::InternalError(Cat("cannot create data directory ",
                                            options.data_dir.string()));
  }
  std::unique_ptr<SurveyService> service(new SurveyService(std::move(options)));
  for (const auto& entry : fs::directory_iterator(service->options_.data_dir)) {
    const std::string name = entry.path().filename().string();
    if (!absl::EndsWith(ToAbsl(name), ToAbsl(kConfigSuffix))) continue;
    std::ifstream in(entry.path());
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) {
      return ParseError("stored survey ", name, " is not valid JSON");
    }
    auto config = SurveyConfigFromJson(doc);
    if (!config.ok()) return config.status();
    const std::string id = config->survey_id;
    auto state = service->Load(*std::move(config));
    if (!state.ok()) return state.status();
    service->surveys_[id] = *std::move(state);
  }
  return service;
}

fs::path SurveyService::LogPath(const std::string& survey_id) const {
  return options_.data_dir / Cat(survey_id, kLogSuffix);
}

fs::path SurveyService::ConfigPath(const std::string& survey_id) const {
  return options_.data_dir / Cat(survey_id, kConfigSuffix);
}

std::chrono::system_clock::time_point SurveyService::Now() const {
  return options_.clock();
}

absl::StatusOr<CreateResult> SurveyService::Validate(
    const SurveyConfig& config) const {
  CreateResult result{config.survey_id, {}};
  if (!ValidId(config.survey_id)) {
    return InvalidConfig("survey_id must be 1-64 characters of [A-Za-z0-9_-]");
  }
  if (config.questions.empty()) return InvalidConfig("survey has no questions");
  if (!(config.ci_level > 0.0 && config.ci_level < 1.0)) {
    return InvalidConfig("ci_level must lie in (0, 1)");
  }
  std::set<std::string> seen;
  for (const auto& q : config.questions) {
    if (!ValidId(q.question_id)) {
      return InvalidConfig("question_id '", q.question_id,
                           "' must be 1-64 characters of [A-Za-z0-9_-]");
    }
    if (!seen.insert(q.question_id).second) {
      return InvalidConfig("duplicate question_id '", q.question_id, "'");
    }
    const std::size_t k = DesignCategories(q.design);
    if (!q.labels.empty() && q.labels.size() != k) {
      return InvalidConfig("question ", q.question_id, " has ",
                           q.labels.size(), " labels for ", k, " categories");
    }
    if (auto layout = LayoutFor(q.design, options_.interleave); !layout.ok()) {
      return InvalidConfig("question ", q.question_id, ": ",
                           layout.status().message());
    }
    const ValidationReport report = ValidateDesign(BuildMatrix(q.design));
    for (const auto& e : report.Errors()) {
      return InvalidConfig("question ", q.question_id, ": ", e);
    }
    for (const auto& w : report.Warnings()) {
      result.warnings.push_back(Cat(q.question_id, ": ", w));
    }
  }
  return result;
}

absl::StatusOr<std::shared_ptr<SurveyService::SurveyState>> SurveyService::Load(
    SurveyConfig config) {
  auto state = std::make_shared<SurveyState>();
  for (const auto& q : config.questions) {
    state->categories[q.question_id] = DesignCategories(q.design);
  }
  auto log = ResponseLog::Open(LogPath(config.survey_id), state->categories,
                               options_.compact_every);
  if (!log.ok()) return log.status();
  state->log = *std::move(log);
  state->config = std::move(config);
  return state;
}

absl::Status SurveyService::Persist(const SurveyConfig& config) const {
  const fs::path path = ConfigPath(config.survey_id);
  const fs::path tmp = fs::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << SurveyConfigToJson(config).dump(2) << "\n";
    if (!out) return absl::InternalError("cannot write survey configuration");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) return absl::InternalError("cannot store survey configuration");
  return absl::OkStatus();
}

absl::StatusOr<CreateResult> SurveyService::CreateSurvey(SurveyConfig config) {
  if (config.survey_id.empty()) config.survey_id = NewToken(8);
  auto result = Validate(config);
  if (!result.ok()) return result.status();

  std::unique_lock lock(surveys_mu_);
  if (surveys_.count(config.survey_id) > 0 ||
      fs::exists(ConfigPath(config.survey_id))) {
    return absl::AlreadyExistsError(
        Cat(error_tag::kDuplicateId, ": ", config.survey_id));
  }
  if (auto s = Persist(config); !s.ok()) return s;
  const std::string id = config.survey_id;
  auto state = Load(std::move(config));
  if (!state.ok()) return state.status();
  surveys_[id] = *std::move(state);
  return result;
}

absl::StatusOr<CreateResult> SurveyService::UpdateSurvey(SurveyConfig config) {
  auto result = Validate(config);
  if (!result.ok()) return result.status();

  // Lock order everywhere: sessions_mu_, then surveys_mu_.
  std::lock_guard<std::mutex> sessions_lock(sessions_mu_);
  std::unique_lock lock(surveys_mu_);
  auto it = surveys_.find(config.survey_id);
  if (it == surveys_.end()) return UnknownSurvey(config.survey_id);
  if (it->second->log->Snapshot()->records > 0 ||
      HasPendingAnswersLocked(config.survey_id)) {
    return absl::FailedPreconditionError(Cat(
        error_tag::kSurveyLocked, ": survey ", config.survey_id,
        " already has answers and can no longer change"));
  }
  if (auto s = Persist(config); !s.ok()) return s;
  const fs::path stale_index = it->second->log->index_path();
  it->second.reset();
  std::error_code ec;
  fs::remove(stale_index, ec);
  const std::string id = config.survey_id;
  auto state = Load(std::move(config));
  if (!state.ok()) return state.status();
  surveys_[id] = *std::move(state);
  return result;
}

std::shared_ptr<SurveyService::SurveyState> SurveyService::Find(
    const std::string& survey_id) const {
  std::shared_lock lock(surveys_mu_);
  auto it = surveys_.find(survey_id);
  return it == surveys_.end() ? nullptr : it->second;
}

bool SurveyService::HasPendingAnswersLocked(
    const std::string& survey_id) const {
  for (const auto& [token, s] : sessions_) {
    if (s.survey_id == survey_id && !s.pending.empty()) return true;
  }
  return false;
}

absl::StatusOr<SurveyConfig> SurveyService::GetSurvey(
    const std::string& survey_id) const {
  auto state = Find(survey_id);
  if (!state) return UnknownSurvey(survey_id);
  return state->config;
}

std::vector<std::string> SurveyService::ListSurveys() const {
  std::shared_lock lock(surveys_mu_);
  std::vector<std::string> ids;
  for (const auto& [id, state] : surveys_) ids.push_back(id);
  return ids;
}

absl::StatusOr<SessionDocument> SurveyService::OpenSession(
    const std::string& survey_id) {
  auto state = Find(survey_id);
  if (!state) return UnknownSurvey(survey_id);

  json questions = json::array();
  for (const auto& q : state->config.questions) {
    auto layout = LayoutFor(q.design, options_.interleave);
    if (!layout.ok()) return layout.status();
    questions.push_back(
        {{"question_id", q.question_id},
         {"text", q.text},
         {"type", std::holds_alternative<BinaryDesign>(q.design) ? "binary"
                                                                 : "quant"},
         {"k", DesignCategories(q.design)},
         {"labels", Labels(q)},
         {"layout", LayoutToJson(*layout)}});
  }

  Session session{NewToken(16), survey_id, Now(), false};
  {
    std::lock_guard<std::mutex> lock(sessions_mu_);
    sessions_[session.token] =
        SessionState{survey_id, session.created_at, false, {}};
  }
  json doc = {{"survey_id", survey_id},
              {"title", state->config.title},
              {"session_token", session.token},
              {"instructions", kInstructions},
              {"questions", std::move(questions)}};
  return SessionDocument{std::move(session), std::move(doc)};
}

absl::Status SurveyService::RecordResponse(const std::string& token,
                                           const std::string& question_id,
                                           std::size_t category) {
  std::lock_guard<std::mutex> lock(sessions_mu_);
  auto it = sessions_.find(token);
  if (it == sessions_.end()) return UnknownSession();
  SessionState& session = it->second;
  if (session.completed) {
    return absl::FailedPreconditionError(Cat(
        error_tag::kAlreadyCompleted, ": session is already completed"));
  }
  auto state = Find(session.survey_id);
  if (!state) return UnknownSurvey(session.survey_id);
  auto q = state->categories.find(question_id);
  if (q == state->categories.end()) return UnknownQuestion(question_id);
  if (category >= q->second) {
    return absl::OutOfRangeError(
        Cat(error_tag::kCategoryOutOfRange, ": category ",
                     category + 1, " on a ", q->second, "-category question"));
  }
  session.pending[question_id] = category;
  return absl::OkStatus();
}

absl::Status SurveyService::CompleteSession(const std::string& token) {
  std::lock_guard<std::mutex> lock(sessions_mu_);
  auto it = sessions_.find(token);
  if (it == sessions_.end()) return UnknownSession();
  SessionState& session = it->second;
  if (session.completed) {
    return absl::FailedPreconditionError(Cat(
        error_tag::kAlreadyCompleted, ": session is already completed"));
  }
  auto state = Find(session.survey_id);
  if (!state) return UnknownSurvey(session.survey_id);

  const std::string received_at =
      CoarsenTimestamp(Now(), options_.timestamp_granularity);
  std::vector<ResponseRecord> records;
  // Question order, not submission order, so the log does not reveal the
  // sequence in which a respondent answered.
  for (const auto& q : state->config.questions) {
    auto answer = session.pending.find(q.question_id);
    if (answer == session.pending.end()) continue;
    records.push_back(
        {session.survey_id, q.question_id, answer->second, received_at});
  }
  if (auto s = state->log->Append(records); !s.ok()) return s;
  session.completed = true;
  session.pending.clear();
  return absl::OkStatus();
}

absl::StatusOr<TallySnapshot> SurveyService::SnapshotTallies(
    const std::string& survey_id) const {
  auto state = Find(survey_id);
  if (!state) return UnknownSurvey(survey_id);
  return *state->log->Snapshot();
}

absl::StatusOr<ResponseTally> SurveyService::ExportTally(
    const std::string& survey_id, const std::string& question_id) const {
  auto state = Find(survey_id);
  if (!state) return UnknownSurvey(survey_id);
  auto snapshot = state->log->Snapshot();
  auto it = snapshot->counts.find(question_id);
  if (it == snapshot->counts.end()) return UnknownQuestion(question_id);
  std::int64_t n = 0;
  for (auto c : it->second) n += c;
  if (n == 0) {
    return InsufficientData("question ", question_id, " has no answers yet");
  }
  return ResponseTally::Create(it->second);
}

absl::StatusOr<SurveyReport> SurveyService::ComputeReport(
    const std::string& survey_id) const {
  auto state = Find(survey_id);
  if (!state) return UnknownSurvey(survey_id);
  auto snapshot = state->log->Snapshot();
  SurveyReport report{survey_id, {}};
  const EstimateOptions options{state->config.ci_level};
  for (const auto& q : state->config.questions) {
    QuestionReport entry{q.question_id, DesignDigest(q.design), Labels(q), 0,
                         absl::UnknownError("unset")};
    const auto& counts = snapshot->counts.at(q.question_id);
    for (auto c : counts) entry.n += c;
    auto tally = ResponseTally::Create(counts);
    if (!tally.ok()) {
      entry.estimate = InsufficientData("question ", q.question_id,
                                        " has no answers yet");
    } else {
      entry.estimate = EstimateForDesign(*tally, q.design, options);
    }
    report.questions.push_back(std::move(entry));
  }
  return report;
}

}  // namespace frr
