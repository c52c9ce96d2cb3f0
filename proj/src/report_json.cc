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

#include "bertscore/report_json.h"

#include <cstddef>
#include <stdexcept>

namespace bertscore {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json TokensToJson(const TokenSequence& seq) {
  ordered_json out = ordered_json::array();
  for (const Token& t : seq.tokens) {
    ordered_json token;
    token["surface"] = t.surface;
    token["char_span"] = {t.char_span.begin, t.char_span.end};
    token["is_special"] = t.is_special;
    token["is_subword"] = t.is_subword;
    out.push_back(std::move(token));
  }
  return out;
}

ordered_json MatchesToJson(const std::vector<MatchRecord>& matches) {
  ordered_json out = ordered_json::array();
  for (const MatchRecord& m : matches) {
    ordered_json match;
    match["source"] = m.source_index;
    match["target"] = m.target_index;
    match["score"] = m.score;
    out.push_back(std::move(match));
  }
  return out;
}

class Validator {
 public:
  explicit Validator(const json& doc) : doc_(doc) {}

  std::vector<std::string> Run() {
    if (!doc_.is_object()) {
      errors_.push_back("response is not a JSON object");
      return errors_;
    }
    for (const char* key : {"precision", "recall", "f1"}) Number(key);
    const std::size_t k = Tokens("reference_tokens");
    const std::size_t m = Tokens("candidate_tokens");
    Matches("recall_matches", k, m);
    Matches("precision_matches", m, k);
    Indices("unmatched_reference", k);
    Indices("unmatched_candidate", m);
    for (const char* key : {"provider_id", "engine_version"}) {
      if (const json* v = Field(key); v && !v->is_string()) {
        Fail(std::string(key) + " must be a string");
      }
    }
    return errors_;
  }

 private:
  const json* Field(const std::string& key) {
    auto it = doc_.find(key);
    if (it == doc_.end()) {
      Fail("missing key " + key);
      return nullptr;
    }
    return &*it;
  }

  void Fail(std::string message) { errors_.push_back(std::move(message)); }

  static bool IsIndex(const json& v) { return v.is_number_unsigned(); }

  void Number(const std::string& key) {
    if (const json* v = Field(key); v && !v->is_number()) {
      Fail(key + " must be a number");
    }
  }

  // Returns the number of scoring (non-special) tokens.
  std::size_t Tokens(const std::string& key) {
    const json* v = Field(key);
    if (!v) return 0;
    if (!v->is_array()) {
      Fail(key + " must be an array");
      return 0;
    }
    std::size_t scoring = 0;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& t = (*v)[i];
      const std::string where = key + "[" + std::to_string(i) + "]";
      if (!t.is_object() || !t.contains("surface") ||
          !t["surface"].is_string() || !t.contains("is_special") ||
          !t["is_special"].is_boolean() || !t.contains("is_subword") ||
          !t["is_subword"].is_boolean() || !t.contains("char_span")) {
        Fail(where + " is not a token object");
        continue;
      }
      const json& span = t["char_span"];
      if (!span.is_array() || span.size() != 2 || !IsIndex(span[0]) ||
          !IsIndex(span[1]) ||
          span[0].get<std::size_t>() > span[1].get<std::size_t>()) {
        Fail(where + ".char_span must be [begin, end] with begin <= end");
      }
      if (!t["is_special"].get<bool>()) ++scoring;
    }
    return scoring;
  }

  void Matches(const std::string& key, std::size_t sources,
               std::size_t targets) {
    const json* v = Field(key);
    if (!v) return;
    if (!v->is_array()) {
      Fail(key + " must be an array");
      return;
    }
    if (v->size() != sources) {
      Fail(key + " must have one entry per scoring token");
    }
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& match = (*v)[i];
      const std::string where = key + "[" + std::to_string(i) + "]";
      if (!match.is_object() || !match.contains("source") ||
          !match.contains("target") || !match.contains("score") ||
          !IsIndex(match["source"]) || !IsIndex(match["target"]) ||
          !match["score"].is_number()) {
        Fail(where + " is not a match object");
        continue;
      }
      if (match["source"].get<std::size_t>() != i) {
        Fail(where + ".source must equal its position");
      }
      if (match["target"].get<std::size_t>() >= targets) {
        Fail(where + ".target is out of range");
      }
    }
  }

  void Indices(const std::string& key, std::size_t bound) {
    const json* v = Field(key);
    if (!v) return;
    if (!v->is_array()) {
      Fail(key + " must be an array");
      return;
    }
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& index = (*v)[i];
      if (!IsIndex(index) || index.get<std::size_t>() >= bound) {
        Fail(key + "[" + std::to_string(i) + "] is not a valid index");
      } else if (i > 0 && IsIndex((*v)[i - 1]) &&
                 (*v)[i - 1].get<std::size_t>() >= index.get<std::size_t>()) {
        Fail(key + " must be strictly ascending");
      }
    }
  }

  const json& doc_;
  std::vector<std::string> errors_;
};

TokenSequence TokensFromJson(const json& tokens) {
  TokenSequence seq;
  for (const json& t : tokens) {
    Token token;
    token.surface = t["surface"].get<std::string>();
    token.id = -1;
    token.char_span = {t["char_span"][0].get<std::size_t>(),
                       t["char_span"][1].get<std::size_t>()};
    token.is_special = t["is_special"].get<bool>();
    token.is_subword = t["is_subword"].get<bool>();
    seq.tokens.push_back(std::move(token));
  }
  return seq;
}

std::vector<MatchRecord> MatchesFromJson(const json& matches,
                                         MatchDirection direction) {
  std::vector<MatchRecord> out;
  for (const json& m : matches) {
    out.push_back({direction, m["source"].get<std::size_t>(),
                   m["target"].get<std::size_t>(), m["score"].get<double>()});
  }
  return out;
}

}  // namespace

ordered_json ScoreResponseToJson(const ScoreReport& report,
                                 std::string_view engine_version) {
  ordered_json out;
  out["precision"] = report.precision;
  out["recall"] = report.recall;
  out["f1"] = report.f1;
  out["reference_tokens"] = TokensToJson(report.reference_tokens);
  out["candidate_tokens"] = TokensToJson(report.candidate_tokens);
  out["recall_matches"] = MatchesToJson(report.recall_matches);
  out["precision_matches"] = MatchesToJson(report.precision_matches);
  out["unmatched_reference"] = report.unmatched_reference;
  out["unmatched_candidate"] = report.unmatched_candidate;
  out["provider_id"] = report.provider_id;
  out["engine_version"] = engine_version;
  return out;
}

std::string SerializeScoreResponse(const ScoreReport& report,
                                   std::string_view engine_version) {
  return ScoreResponseToJson(report, engine_version).dump();
}

std::vector<std::string> ValidateScoreResponse(const json& doc) {
  return Validator(doc).Run();
}

ScoreResponse ParseScoreResponse(std::string_view body) {
  const json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded()) {
    throw std::invalid_argument("score response is not valid JSON");
  }
  if (auto errors = ValidateScoreResponse(doc); !errors.empty()) {
    throw std::invalid_argument("invalid score response: " + errors.front());
  }
  ScoreResponse response;
  ScoreReport& r = response.report;
  r.precision = doc["precision"].get<double>();
  r.recall = doc["recall"].get<double>();
  r.f1 = doc["f1"].get<double>();
  r.reference_tokens = TokensFromJson(doc["reference_tokens"]);
  r.candidate_tokens = TokensFromJson(doc["candidate_tokens"]);
  r.recall_matches =
      MatchesFromJson(doc["recall_matches"], MatchDirection::kRecall);
  r.precision_matches =
      MatchesFromJson(doc["precision_matches"], MatchDirection::kPrecision);
  r.unmatched_reference =
      doc["unmatched_reference"].get<std::vector<std::size_t>>();
  r.unmatched_candidate =
      doc["unmatched_candidate"].get<std::vector<std::size_t>>();
  r.provider_id = doc["provider_id"].get<std::string>();
  response.engine_version = doc["engine_version"].get<std::string>();
  return response;
}

}  // namespace bertscore
