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

#include "http_api.h"

#include <map>
#include <string_view>

#include "frr/errors.h"
#include "frr/report_io.h"

namespace frr {
namespace {

using nlohmann::json;

constexpr char kJsonType[] = "application/json; charset=utf-8";

const std::map<std::string_view, int>& StatusByTag() {
  static const auto* table = new std::map<std::string_view, int>{
      {error_tag::kInvalidDesign, 400},
      {error_tag::kInvalidPartition, 400},
      {error_tag::kInvalidPi, 400},
      {error_tag::kInvalidTally, 400},
      {error_tag::kInvalidConfig, 400},
      {error_tag::kParseError, 400},
      {error_tag::kDimensionMismatch, 400},
      {error_tag::kUnrealizableLayout, 400},
      {error_tag::kAngleOutOfRange, 400},
      {error_tag::kCategoryOutOfRange, 400},
      {error_tag::kUnknownSurvey, 404},
      {error_tag::kUnknownQuestion, 404},
      {error_tag::kUnknownSession, 404},
      {error_tag::kDuplicateId, 409},
      {error_tag::kAlreadyCompleted, 409},
      {error_tag::kSurveyLocked, 409},
      {error_tag::kInsufficientData, 422},
      {error_tag::kSingularDesign, 422},
  };
  return *table;
}

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJsonType);
}

void ReplyError(httplib::Response& res, const absl::Status& status) {
  Reply(res, HttpStatusFor(status), ErrorBody(status));
}

absl::StatusOr<json> ParseBody(const httplib::Request& req) {
  json doc = json::parse(req.body, nullptr, false);
  if (doc.is_discarded()) return ParseError("request body is not valid JSON");
  return doc;
}

json CreateResultJson(const CreateResult& r) {
  return {{"survey_id", r.survey_id}, {"warnings", r.warnings}};
}

json QuestionTallyJson(const std::string& question_id,
                       const std::vector<std::int64_t>& counts,
                       const std::vector<std::string>& labels) {
  std::int64_t n = 0;
  for (auto c : counts) n += c;
  return {{"question_id", question_id},
          {"counts", counts},
          {"n", n},
          {"labels", labels}};
}

class Routes {
 public:
  Routes(SurveyService& service, HttpOptions options)
      : service_(service), options_(std::move(options)) {}

  bool Authorized(const httplib::Request& req, httplib::Response& res) const {
    if (options_.admin_token.empty()) return true;
    if (req.get_header_value(kAdminTokenHeader) == options_.admin_token) {
      return true;
    }
    Reply(res, 401, {{"error", "unauthorized"},
                     {"message", "missing or wrong admin token"}});
    return false;
  }

  void CreateSurvey(const httplib::Request& req, httplib::Response& res) {
    if (!Authorized(req, res)) return;
    auto config = ParseConfig(req);
    if (!config.ok()) return ReplyError(res, config.status());
    auto created = service_.CreateSurvey(*std::move(config));
    if (!created.ok()) return ReplyError(res, created.status());
    Reply(res, 201, CreateResultJson(*created));
  }

  void UpdateSurvey(const httplib::Request& req, httplib::Response& res) {
    if (!Authorized(req, res)) return;
    auto config = ParseConfig(req);
    if (!config.ok()) return ReplyError(res, config.status());
    if (config->survey_id.empty()) {
      config->survey_id = req.path_params.at("id");
    } else if (config->survey_id != req.path_params.at("id")) {
      return ReplyError(
          res, absl::InvalidArgumentError(Cat(
                   error_tag::kInvalidConfig,
                   ": survey_id in the body does not match the path")));
    }
    auto updated = service_.UpdateSurvey(*std::move(config));
    if (!updated.ok()) return ReplyError(res, updated.status());
    Reply(res, 200, CreateResultJson(*updated));
  }

  void ListSurveys(const httplib::Request& req, httplib::Response& res) {
    if (!Authorized(req, res)) return;
    Reply(res, 200, {{"surveys", service_.ListSurveys()}});
  }

  void GetSurvey(const httplib::Request& req, httplib::Response& res) {
    if (!Authorized(req, res)) return;
    auto config = service_.GetSurvey(req.path_params.at("id"));
    if (!config.ok()) return ReplyError(res, config.status());
    Reply(res, 200, SurveyConfigToJson(*config));
  }

  void OpenSession(const httplib::Request& req, httplib::Response& res) {
    auto doc = service_.OpenSession(req.path_params.at("id"));
    if (!doc.ok()) return ReplyError(res, doc.status());
    Reply(res, 200, doc->questionnaire);
  }

  void RecordResponse(const httplib::Request& req, httplib::Response& res) {
    auto body = ParseBody(req);
    if (!body.ok()) return ReplyError(res, body.status());
    if (!body->is_object() || body->size() != 2 ||
        !body->contains("question_id") || !(*body)["question_id"].is_string() ||
        !body->contains("category") ||
        !(*body)["category"].is_number_integer()) {
      return ReplyError(
          res, ParseError("body must be exactly {question_id: string, "
                          "category: integer}"));
    }
    const auto category = (*body)["category"].get<std::int64_t>();
    if (category < 1) {
      return ReplyError(res, absl::OutOfRangeError(
                                 Cat(error_tag::kCategoryOutOfRange,
                                     ": categories are numbered from 1")));
    }
    auto status = service_.RecordResponse(
        req.path_params.at("token"), (*body)["question_id"].get<std::string>(),
        static_cast<std::size_t>(category - 1));
    if (!status.ok()) return ReplyError(res, status);
    Reply(res, 200, {{"status", "recorded"}});
  }

  void CompleteSession(const httplib::Request& req, httplib::Response& res) {
    auto status = service_.CompleteSession(req.path_params.at("token"));
    if (!status.ok()) return ReplyError(res, status);
    Reply(res, 200, {{"status", "completed"}});
  }

  void Tally(const httplib::Request& req, httplib::Response& res) {
    if (!Authorized(req, res)) return;
    const std::string& id = req.path_params.at("id");
    auto config = service_.GetSurvey(id);
    if (!config.ok()) return ReplyError(res, config.status());
    auto snapshot = service_.SnapshotTallies(id);
    if (!snapshot.ok()) return ReplyError(res, snapshot.status());
    const std::string only = req.get_param_value("question");
    json questions = json::array();
    for (const auto& q : config->questions) {
      if (!only.empty() && q.question_id != only) continue;
      auto labels = q.labels.empty() ? DesignLabels(q.design) : q.labels;
      json entry = QuestionTallyJson(
          q.question_id, snapshot->counts.at(q.question_id), labels);
      if (!only.empty()) return Reply(res, 200, entry);
      questions.push_back(std::move(entry));
    }
    if (!only.empty()) {
      return ReplyError(res, absl::NotFoundError(Cat(
                                 error_tag::kUnknownQuestion, ": ", only)));
    }
    Reply(res, 200, {{"survey_id", id}, {"questions", std::move(questions)}});
  }

  void Report(const httplib::Request& req, httplib::Response& res) {
    if (!Authorized(req, res)) return;
    auto report = service_.ComputeReport(req.path_params.at("id"));
    if (!report.ok()) return ReplyError(res, report.status());
    Reply(res, 200, SurveyReportToJson(*report));
  }

 private:
  static absl::StatusOr<SurveyConfig> ParseConfig(const httplib::Request& req) {
    auto body = ParseBody(req);
    if (!body.ok()) return body.status();
    return SurveyConfigFromJson(*body);
  }

  SurveyService& service_;
  HttpOptions options_;
};

}  // namespace

int HttpStatusFor(const absl::Status& status) {
  if (status.ok()) return 200;
  const auto& table = StatusByTag();
  if (auto it = table.find(ErrorTag(status)); it != table.end()) {
    return it->second;
  }
  switch (status.code()) {
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
      return 400;
    case absl::StatusCode::kNotFound:
      return 404;
    case absl::StatusCode::kAlreadyExists:
    case absl::StatusCode::kFailedPrecondition:
      return 409;
    default:
      return 500;
  }
}

json ErrorBody(const absl::Status& status) {
  std::string_view tag = ErrorTag(status);
  return {{"error", tag.empty() ? "internal" : std::string(tag)},
          {"message", std::string(status.message())}};
}

void RegisterRoutes(httplib::Server& server, SurveyService& service,
                    HttpOptions options) {
  auto routes = std::make_shared<Routes>(service, std::move(options));
  auto bind = [routes](void (Routes::*method)(const httplib::Request&,
                                              httplib::Response&)) {
    return [routes, method](const httplib::Request& req,
                            httplib::Response& res) {
      ((*routes).*method)(req, res);
    };
  };
  server.Post("/surveys", bind(&Routes::CreateSurvey));
  server.Get("/surveys", bind(&Routes::ListSurveys));
  server.Get("/surveys/:id", bind(&Routes::GetSurvey));
  server.Put("/surveys/:id", bind(&Routes::UpdateSurvey));
  server.Get("/surveys/:id/session", bind(&Routes::OpenSession));
  server.Post("/sessions/:token/responses", bind(&Routes::RecordResponse));
  server.Post("/sessions/:token/complete", bind(&Routes::CompleteSession));
  server.Get("/surveys/:id/tally", bind(&Routes::Tally));
  server.Get("/surveys/:id/report", bind(&Routes::Report));
  server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
        Reply(res, 500, {{"error", "internal"},
                         {"message", "unexpected server error"}});
      });
}

}  // namespace frr
