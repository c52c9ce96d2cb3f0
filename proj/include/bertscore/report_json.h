// Copyright 2026 The BERTScore Visualizer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The v1 wire format of a ScoreReport, shared by the HTTP service and the
// CLI's JSON output. See docs/score_response.v1.schema.json.

#ifndef BERTSCORE_REPORT_JSON_H_
#define BERTSCORE_REPORT_JSON_H_

#include <string>
#include <string_view>
#include <vector>

#include "bertscore/score.h"
#include "bertscore/version.h"
#include "json.hpp"

namespace bertscore {

struct ScoreResponse {
  // Tokens parsed from the wire carry id -1 and no original_text; the v1
  // schema does not transmit them.
  ScoreReport report;
  std::string engine_version;
};

nlohmann::ordered_json ScoreResponseToJson(
    const ScoreReport& report, std::string_view engine_version = kEngineVersion);

// Compact single-line JSON; keys in schema order.
std::string SerializeScoreResponse(
    const ScoreReport& report, std::string_view engine_version = kEngineVersion);

// Throws std::invalid_argument if `body` does not validate.
ScoreResponse ParseScoreResponse(std::string_view body);

// Returns one message per schema violation; empty means valid.
std::vector<std::string> ValidateScoreResponse(const nlohmann::json& doc);

}  // namespace bertscore

#endif  // BERTSCORE_REPORT_JSON_H_
