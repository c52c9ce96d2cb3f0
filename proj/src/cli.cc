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

#include "bertscore/cli.h"

#include <pthread.h>
#include <signal.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bertscore/api_service.h"
#include "bertscore/bert_model.h"
#include "bertscore/error.h"
#include "bertscore/report_json.h"
#include "bertscore/score.h"
#include "bertscore/version.h"

namespace bertscore {
namespace {

enum class OutputFormat { kJson, kTsv };

struct Invocation {
  std::string reference;
  std::string candidate;
  std::string ref_file;
  std::string cand_file;
  std::string serve;
  OutputFormat format = OutputFormat::kJson;
  ServiceConfig service;
  bool truncate = false;
  unsigned jobs = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string FormatScores(double p, double r, double f1) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6f\t%.6f\t%.6f", p, r, f1);
  return buf;
}

std::string TsvRow(const ScoreReport& report) {
  return FormatScores(report.precision, report.recall, report.f1) + "\t" +
         std::to_string(report.unmatched_reference.size()) + "\t" +
         std::to_string(report.unmatched_candidate.size());
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

struct Engine {
  std::shared_ptr<const Vocab> vocab;
  std::shared_ptr<const EmbeddingProvider> provider;
};

Engine LoadEngine(const ServiceConfig& config) {
  Engine engine;
  engine.provider = MakeProvider(config.provider);
  std::filesystem::path vocab_path = config.vocab_path;
  if (vocab_path.empty()) {
    if (const auto* model =
            dynamic_cast<const BertModelProvider*>(engine.provider.get())) {
      vocab_path = model->model_dir() / "vocab.txt";
    }
  }
  engine.vocab = std::make_shared<const Vocab>(Vocab::FromFile(vocab_path));
  return engine;
}

void ReportError(std::ostream& err, const Error& e) {
  err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
}

int RunScorePair(const Invocation& inv, const Engine& engine,
                 std::ostream& out) {
  const ScoreReport report =
      Score(inv.reference, inv.candidate, *engine.vocab, *engine.provider,
            ScoreOptions{inv.truncate});
  if (inv.format == OutputFormat::kTsv) {
    out << TsvRow(report) << "\n";
  } else {
    out << SerializeScoreResponse(report) << "\n";
  }
  return kExitOk;
}

int RunScoreFiles(const Invocation& inv, const Engine& engine,
                  std::ostream& out, std::ostream& err) {
  const std::vector<std::string> refs = ReadLines(inv.ref_file);
  const std::vector<std::string> cands = ReadLines(inv.cand_file);
  if (refs.size() != cands.size()) {
    err << "error: " << inv.ref_file << " has " << refs.size() << " lines but "
        << inv.cand_file << " has " << cands.size() << "\n";
    return kExitRuntimeError;
  }
  if (refs.empty()) {
    err << "error: no sentence pairs to score\n";
    return kExitRuntimeError;
  }

  // Score everything before printing so a failure leaves no partial output.
  const std::size_t n = refs.size();
  std::vector<std::optional<ScoreReport>> reports(n);
  std::vector<std::optional<Error>> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        reports[i] = Score(refs[i], cands[i], *engine.vocab, *engine.provider,
                           ScoreOptions{inv.truncate});
      } catch (const Error& e) {
        errors[i] = e;
      }
    }
  };
  const unsigned jobs = std::max(
      1u, std::min<unsigned>(inv.jobs ? inv.jobs
                                      : std::thread::hardware_concurrency(),
                             static_cast<unsigned>(n)));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();

  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) {
      err << "line " << i + 1 << ": ";
      ReportError(err, *errors[i]);
      return kExitRuntimeError;
    }
  }

  double p = 0.0, r = 0.0, f = 0.0;
  for (const auto& report : reports) {
    p += report->precision;
    r += report->recall;
    f += report->f1;
    if (inv.format == OutputFormat::kTsv) {
      out << TsvRow(*report) << "\n";
    } else {
      out << SerializeScoreResponse(*report) << "\n";
    }
  }
  const double count = static_cast<double>(n);
  if (inv.format == OutputFormat::kTsv) {
    out << "mean\t" << FormatScores(p / count, r / count, f / count) << "\n";
  } else {
    nlohmann::ordered_json summary;
    summary["pairs"] = n;
    summary["precision"] = p / count;
    summary["recall"] = r / count;
    summary["f1"] = f / count;
    out << nlohmann::ordered_json{{"summary", summary}}.dump() << "\n";
  }
  return kExitOk;
}

int RunServe(const Invocation& inv, const Engine& engine, std::ostream& out,
             std::ostream& err) {
  std::string host;
  int port = 0;
  ParseBindAddress(inv.serve, &host, &port);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  ScoreService service(engine.vocab, engine.provider, inv.service.provider);
  HttpServer server(service, inv.service.cors_origin);
  int bound = 0;
  try {
    bound = server.Bind(host, port);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    return kExitRuntimeError;
  }
  out << "listening on http://" << host << ":" << bound << " ("
      << service.provider_id() << ")" << std::endl;

  std::atomic<bool> signaled{false};
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    signaled = true;
    server.Stop();
  });
  server.Run();
  if (!signaled) pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  out << "shut down" << std::endl;
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"BERTScore with per-token match reporting"};
  app.name("bertscore");
  Invocation inv;
  std::string format = "json";
  std::string provider;
  std::string vocab;
  std::string model;
  std::string cors;
  int layer = -1;
  uint64_t seed = 0;
  int dim = 8;

  auto* reference_opt =
      app.add_option("--reference", inv.reference, "Reference text");
  auto* candidate_opt =
      app.add_option("--candidate", inv.candidate, "Candidate text");
  auto* ref_file_opt = app.add_option(
      "--ref-file", inv.ref_file, "Reference file, one sentence per line");
  auto* cand_file_opt = app.add_option(
      "--cand-file", inv.cand_file, "Candidate file, line-aligned with --ref-file");
  auto* serve_opt =
      app.add_option("--serve", inv.serve, "Run the HTTP service on HOST:PORT");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "tsv"}));
  auto* vocab_opt = app.add_option("--vocab", vocab, "WordPiece vocab file");
  auto* provider_opt = app.add_option("--provider", provider,
                                      "Embedding provider")
                           ->check(CLI::IsMember({"test", "model"}));
  auto* model_opt =
      app.add_option("--model", model, "Checkpoint directory or .safetensors");
  auto* layer_opt = app.add_option(
      "--layer", layer, "Hidden layer for model embeddings (-1 = last)");
  auto* seed_opt = app.add_option("--seed", seed, "Test provider seed");
  auto* dim_opt = app.add_option("--dim", dim, "Test provider dimension")
                      ->check(CLI::PositiveNumber);
  auto* contextual_flag = app.add_flag(
      "--contextual", "Test provider mixes token position into the hash");
  app.add_flag("--truncate", inv.truncate,
               "Truncate inputs longer than 512 tokens instead of failing");
  app.add_option("--jobs", inv.jobs, "Worker threads for --ref-file scoring");
  auto* cors_opt = app.add_option("--cors-origin", cors,
                                  "Allowed CORS origin in --serve mode");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const bool pair_mode = reference_opt->count() || candidate_opt->count();
  const bool files_mode = ref_file_opt->count() || cand_file_opt->count();
  const bool serve_mode = serve_opt->count() > 0;
  if (pair_mode + files_mode + serve_mode != 1) {
    err << "usage error: choose exactly one of --reference/--candidate, "
           "--ref-file/--cand-file, --serve\n";
    return kExitUsage;
  }
  if (pair_mode && !(reference_opt->count() && candidate_opt->count())) {
    err << "usage error: --reference and --candidate go together\n";
    return kExitUsage;
  }
  if (files_mode && !(ref_file_opt->count() && cand_file_opt->count())) {
    err << "usage error: --ref-file and --cand-file go together\n";
    return kExitUsage;
  }
  inv.format = format == "tsv" ? OutputFormat::kTsv : OutputFormat::kJson;

  try {
    inv.service = ServiceConfigFromEnv();
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  ProviderConfig& pc = inv.service.provider;
  if (provider_opt->count()) pc.kind = *ParseProviderKind(provider);
  if (model_opt->count()) pc.model_path = model;
  if (layer_opt->count()) pc.layer = layer;
  if (seed_opt->count()) pc.seed = seed;
  if (dim_opt->count()) pc.dim = dim;
  if (contextual_flag->count()) pc.contextual = true;
  if (vocab_opt->count()) inv.service.vocab_path = vocab;
  if (cors_opt->count()) inv.service.cors_origin = cors;
  if (pc.kind == ProviderKind::kModelFile && pc.model_path.empty()) {
    err << "usage error: --provider model needs --model\n";
    return kExitUsage;
  }
  if (pc.kind == ProviderKind::kDeterministicTest &&
      inv.service.vocab_path.empty()) {
    err << "usage error: --vocab is required\n";
    return kExitUsage;
  }
  if (serve_mode) {
    try {
      std::string host;
      int port = 0;
      ParseBindAddress(inv.serve, &host, &port);
    } catch (const std::invalid_argument& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    }
  }

  try {
    const Engine engine = LoadEngine(inv.service);
    if (pair_mode) return RunScorePair(inv, engine, out);
    if (files_mode) return RunScoreFiles(inv, engine, out, err);
    return RunServe(inv, engine, out, err);
  } catch (const Error& e) {
    ReportError(err, e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitRuntimeError;
}

}  // namespace bertscore
