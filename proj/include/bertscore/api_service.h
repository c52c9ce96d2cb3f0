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

// HTTP scoring service.
//
//   POST /score   {"reference": str, "candidate": str,
//                  "options": {"truncate": bool, "contextual": bool,
//                              "seed": uint, "provider": "test"|"model"}}
//                 -> 200 v1 score response (see report_json.h)
//   GET  /health  -> 200 {"status": "ok", "provider_id": str}
//
// Errors are {"error_code": str, "message": str} with status 400
// (BAD_REQUEST), 422 (EMPTY_INPUT, SEQUENCE_TOO_LONG), 503
// (PROVIDER_UNAVAILABLE) or 500.

#ifndef BERTSCORE_API_SERVICE_H_
#define BERTSCORE_API_SERVICE_H_

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "bertscore/embedding.h"
#include "bertscore/error.h"
#include "bertscore/vocab.h"

namespace httplib {
class Server;
}

namespace bertscore {

struct HttpReply {
  int status = 200;
  std::string body;
};

struct HttpError {
  int status;
  std::string_view error_code;
};

// The single place library errors become HTTP statuses.
HttpError HttpErrorFor(ErrorCode code);

// Request handling without any socket; HttpServer routes to it. Stateless
// and safe to call from any number of threads.
class ScoreService {
 public:
  // `config` is the configuration `provider` was built from; per-request
  // deterministic options are applied on top of it.
  ScoreService(std::shared_ptr<const Vocab> vocab,
               std::shared_ptr<const EmbeddingProvider> provider,
               ProviderConfig config);

  HttpReply HandleScore(std::string_view body) const;
  HttpReply HandleHealth() const;

  const std::string& provider_id() const { return provider_->id(); }

 private:
  std::shared_ptr<const Vocab> vocab_;
  std::shared_ptr<const EmbeddingProvider> provider_;
  ProviderConfig config_;
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  ProviderConfig provider;
  std::filesystem::path vocab_path;
  std::string cors_origin;  // empty disables CORS headers
};

// Reads BERTSCORE_BIND (host:port), BERTSCORE_PROVIDER (test|model),
// BERTSCORE_MODEL, BERTSCORE_LAYER, BERTSCORE_VOCAB, BERTSCORE_SEED,
// BERTSCORE_DIM, BERTSCORE_CONTEXTUAL and BERTSCORE_CORS_ORIGIN. Unset
// variables keep the defaults in `base`. Throws std::invalid_argument on
// unparsable values.
ServiceConfig ServiceConfigFromEnv(
    ServiceConfig base = {},
    const std::function<const char*(const char*)>& getenv = nullptr);

// "host:port" or ":port". Throws std::invalid_argument.
void ParseBindAddress(std::string_view address, std::string* host, int* port);

class HttpServer {
 public:
  HttpServer(const ScoreService& service, std::string cors_origin);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds without accepting yet. Port 0 picks a free port. Returns the bound
  // port; throws std::runtime_error if the address is unavailable.
  int Bind(const std::string& host, int port);

  // Serves until Stop() is called from another thread.
  void Run();
  // Waits for Run() to start accepting (or to have returned) before
  // stopping, so a stop request that races startup is not lost. Must only
  // be called once Run() has been or is about to be called.
  void Stop();
  void WaitUntilReady() const;

 private:
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace bertscore

#endif  // BERTSCORE_API_SERVICE_H_
