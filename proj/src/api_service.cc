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

#include "bertscore/api_service.h"

#include <charconv>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <utility>

#include "bertscore/report_json.h"
#include "bertscore/score.h"
#include "bertscore/version.h"
#include "httplib.h"
#include "json.hpp"

namespace bertscore {
namespace {

using nlohmann::json;

constexpr char kJsonContentType[] = "application/json";

HttpReply ErrorReply(int status, std::string_view error_code,
                     const std::string& message) {
  nlohmann::ordered_json body;
  body["error_code"] = error_code;
  body["message"] = message;
  return {status, body.dump()};
}

HttpReply BadRequest(const std::string& message) {
  return ErrorReply(400, "BAD_REQUEST", message);
}

struct ScoreRequest {
  std::string reference;
  std::string candidate;
  bool truncate = false;
  std::optional<bool> contextual;
  std::optional<uint64_t> seed;
  std::optional<ProviderKind> provider;
};

// Returns an error message, or nullopt on success.
std::optional<std::string> ParseRequest(std::string_view body,
                                        ScoreRequest* request) {
  const json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded()) return "request body is not valid JSON";
  if (!doc.is_object()) return "request body must be a JSON object";
  for (const char* key : {"reference", "candidate"}) {
    auto it = doc.find(key);
    if (it == doc.end()) return std::string("missing field ") + key;
    if (!it->is_string()) return std::string(key) + " must be a string";
  }
  request->reference = doc["reference"].get<std::string>();
  request->candidate = doc["candidate"].get<std::string>();

  auto options_it = doc.find("options");
  if (options_it == doc.end() || options_it->is_null()) return std::nullopt;
  const json& options = *options_it;
  if (!options.is_object()) return "options must be an object";
  if (auto it = options.find("truncate"); it != options.end()) {
    if (!it->is_boolean()) return "options.truncate must be a boolean";
    request->truncate = it->get<bool>();
  }
  if (auto it = options.find("contextual"); it != options.end()) {
    if (!it->is_boolean()) return "options.contextual must be a boolean";
    request->contextual = it->get<bool>();
  }
  if (auto it = options.find("seed"); it != options.end()) {
    if (!it->is_number_unsigned()) {
      return "options.seed must be a non-negative integer";
    }
    request->seed = it->get<uint64_t>();
  }
  if (auto it = options.find("provider"); it != options.end()) {
    if (!it->is_string()) return "options.provider must be a string";
    request->provider = ParseProviderKind(it->get<std::string>());
    if (!request->provider) return "unknown provider " + it->dump();
  }
  return std::nullopt;
}

template <typename T>
T ParseNumber(std::string_view name, std::string_view text) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string(name) + ": invalid number '" +
                                std::string(text) + "'");
  }
  return value;
}

bool ParseBool(std::string_view name, std::string_view text) {
  if (text == "1" || text == "true") return true;
  if (text == "0" || text == "false" || text.empty()) return false;
  throw std::invalid_argument(std::string(name) + ": expected true/false");
}

}  // namespace

HttpError HttpErrorFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput:
      return {422, "EMPTY_INPUT"};
    case ErrorCode::kSequenceTooLong:
      return {422, "SEQUENCE_TOO_LONG"};
    case ErrorCode::kProviderLoad:
    case ErrorCode::kProviderRuntime:
      return {503, "PROVIDER_UNAVAILABLE"};
    case ErrorCode::kDimensionMismatch:
      return {500, "DIMENSION_MISMATCH"};
    case ErrorCode::kDuplicateVocabEntry:
    case ErrorCode::kIncompleteVocab:
      return {500, "VOCAB_ERROR"};
  }
  return {500, "INTERNAL_ERROR"};
}

ScoreService::ScoreService(std::shared_ptr<const Vocab> vocab,
                           std::shared_ptr<const EmbeddingProvider> provider,
                           ProviderConfig config)
    : vocab_(std::move(vocab)),
      provider_(std::move(provider)),
      config_(std::move(config)) {
  config_.kind = provider_->kind();
}

HttpReply ScoreService::HandleScore(std::string_view body) const {
  ScoreRequest request;
  if (auto error = ParseRequest(body, &request)) return BadRequest(*error);

  if (request.provider && *request.provider != provider_->kind()) {
    return BadRequest("this server runs the " +
                      std::string(ProviderKindName(provider_->kind())) +
                      " provider");
  }
  const bool overrides = request.seed || request.contextual;
  if (overrides && provider_->kind() != ProviderKind::kDeterministicTest) {
    return BadRequest("seed/contextual apply only to the test provider");
  }

  try {
    std::shared_ptr<const EmbeddingProvider> provider = provider_;
    if (overrides) {
      ProviderConfig config = config_;
      if (request.seed) config.seed = *request.seed;
      if (request.contextual) config.contextual = *request.contextual;
      provider = std::make_shared<DeterministicProvider>(config);
    }
    const ScoreReport report =
        Score(request.reference, request.candidate, *vocab_, *provider,
              ScoreOptions{request.truncate});
    return {200, SerializeScoreResponse(report)};
  } catch (const Error& e) {
    const HttpError mapped = HttpErrorFor(e.code());
    return ErrorReply(mapped.status, mapped.error_code, e.what());
  } catch (const std::exception& e) {
    return ErrorReply(500, "INTERNAL_ERROR", e.what());
  }
}

HttpReply ScoreService::HandleHealth() const {
  nlohmann::ordered_json body;
  body["status"] = "ok";
  body["provider_id"] = provider_->id();
  return {200, body.dump()};
}

void ParseBindAddress(std::string_view address, std::string* host,
                      int* port) {
  const auto colon = address.rfind(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("bind address must be host:port, got '" +
                                std::string(address) + "'");
  }
  const int parsed = ParseNumber<int>("port", address.substr(colon + 1));
  if (parsed < 0 || parsed > 65535) {
    throw std::invalid_argument("port out of range");
  }
  std::string_view h = address.substr(0, colon);
  if (h.size() >= 2 && h.front() == '[' && h.back() == ']') {
    h = h.substr(1, h.size() - 2);
  }
  *host = h.empty() ? "0.0.0.0" : std::string(h);
  *port = parsed;
}

ServiceConfig ServiceConfigFromEnv(
    ServiceConfig config,
    const std::function<const char*(const char*)>& getenv) {
  auto get = [&](const char* name) -> std::optional<std::string> {
    const char* value = getenv ? getenv(name) : std::getenv(name);
    if (value == nullptr) return std::nullopt;
    return std::string(value);
  };
  if (auto v = get("BERTSCORE_BIND")) {
    ParseBindAddress(*v, &config.host, &config.port);
  }
  if (auto v = get("BERTSCORE_PROVIDER")) {
    auto kind = ParseProviderKind(*v);
    if (!kind) throw std::invalid_argument("BERTSCORE_PROVIDER: unknown " + *v);
    config.provider.kind = *kind;
  }
  if (auto v = get("BERTSCORE_MODEL")) config.provider.model_path = *v;
  if (auto v = get("BERTSCORE_LAYER")) {
    config.provider.layer = ParseNumber<int>("BERTSCORE_LAYER", *v);
  }
  if (auto v = get("BERTSCORE_VOCAB")) config.vocab_path = *v;
  if (auto v = get("BERTSCORE_SEED")) {
    config.provider.seed = ParseNumber<uint64_t>("BERTSCORE_SEED", *v);
  }
  if (auto v = get("BERTSCORE_DIM")) {
    config.provider.dim = ParseNumber<int>("BERTSCORE_DIM", *v);
  }
  if (auto v = get("BERTSCORE_CONTEXTUAL")) {
    config.provider.contextual = ParseBool("BERTSCORE_CONTEXTUAL", *v);
  }
  if (auto v = get("BERTSCORE_CORS_ORIGIN")) config.cors_origin = *v;
  return config;
}

HttpServer::HttpServer(const ScoreService& service, std::string cors_origin)
    : server_(std::make_unique<httplib::Server>()) {
  auto reply = [](httplib::Response& res, const HttpReply& r) {
    res.status = r.status;
    res.set_content(r.body, kJsonContentType);
  };
  server_->Post("/score", [&service, reply](const httplib::Request& req,
                                            httplib::Response& res) {
    reply(res, service.HandleScore(req.body));
  });
  server_->Get("/health",
               [&service, reply](const httplib::Request&,
                                 httplib::Response& res) {
                 reply(res, service.HandleHealth());
               });
  server_->Options("/score", [](const httplib::Request&,
                                httplib::Response& res) { res.status = 204; });
  server_->set_post_routing_handler(
      [origin = std::move(cors_origin)](const httplib::Request&,
                                        httplib::Response& res) {
        res.set_header("X-BERTScore-Schema", std::string(kSchemaVersion));
        if (origin.empty()) return;
        res.set_header("Access-Control-Allow-Origin", origin);
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.set_header("Vary", "Origin");
      });
}

HttpServer::~HttpServer() = default;

int HttpServer::Bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) {
    throw std::runtime_error("cannot bind " + host + ":" +
                             std::to_string(port));
  }
  return port;
}

void HttpServer::Run() { server_->listen_after_bind(); }

void HttpServer::Stop() {
  server_->wait_until_ready();
  server_->stop();
}

void HttpServer::WaitUntilReady() const { server_->wait_until_ready(); }

}  // namespace bertscore
