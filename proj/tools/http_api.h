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

// JSON over HTTP front end for SurveyService.
//
//   POST /surveys                     admin  SurveyConfig -> {survey_id, warnings}
//   GET  /surveys                     admin  -> {surveys: [...]}
//   GET  /surveys/{id}                admin  -> SurveyConfig
//   PUT  /surveys/{id}                admin  SurveyConfig -> {survey_id, warnings}
//   GET  /surveys/{id}/session               -> questionnaire document
//   POST /sessions/{token}/responses         {question_id, category} -> ack
//   POST /sessions/{token}/complete          -> ack
//   GET  /surveys/{id}/tally[?question=q]    admin  -> counts
//   GET  /surveys/{id}/report                admin  -> SurveyReport
//
// Categories on the wire are 1-based. A response body carrying any field
// besides question_id and category is rejected. Errors are
// {"error": <tag>, "message": <text>}. Admin routes need the X-Admin-Token
// header when an admin token is configured.

#ifndef FRR_TOOLS_HTTP_API_H_
#define FRR_TOOLS_HTTP_API_H_

#include <string>

#include <nlohmann/json.hpp>

#include "absl/status/status.h"
#include "frr/survey_service.h"
#include "httplib.h"

namespace frr {

inline constexpr char kAdminTokenHeader[] = "X-Admin-Token";

struct HttpOptions {
  std::string admin_token;
};

int HttpStatusFor(const absl::Status& status);
nlohmann::json ErrorBody(const absl::Status& status);

// `service` must outlive `server`.
void RegisterRoutes(httplib::Server& server, SurveyService& service,
                    HttpOptions options);

}  // namespace frr

#endif  // FRR_TOOLS_HTTP_API_H_
