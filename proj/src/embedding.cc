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

#include "bertscore/embedding.h"

#include <algorithm>
#include <cmath>

#include "bertscore/bert_model.h"
#include "bertscore/error.h"

namespace bertscore {
namespace {

constexpr uint64_t kFnvOffsetBasis = 0xCBF29CE484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001B3ULL;
constexpr uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kMixMultiplier = 0x2545F4914F6CDD1DULL;
constexpr uint64_t kPositionMultiplier = 0xD1B54A32D192ED03ULL;
constexpr double kTwoPow64 = 18446744073709551616.0;

}  // namespace

std::optional<ProviderKind> ParseProviderKind(std::string_view name) {
  if (name == "test" || name == "deterministic_test") {
    return ProviderKind::kDeterministicTest;
  }
  if (name == "model" || name == "model_file") return ProviderKind::kModelFile;
  return std::nullopt;
}

std::string_view ProviderKindName(ProviderKind kind) {
  return kind == ProviderKind::kDeterministicTest ? "test" : "model";
}

EmbeddingSequence EmbeddingProvider::Embed(const TokenSequence& seq) const {
  EmbeddingSequence out{seq, ComputeVectors(seq), id()};
  if (out.vectors.rows() != seq.size() || out.vectors.cols() != dim()) {
    throw Error(ErrorCode::kProviderRuntime,
                "provider " + id() + " returned a matrix of the wrong shape");
  }
  for (double v : out.vectors.data()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kProviderRuntime,
                  "provider " + id() + " produced a non-finite embedding");
    }
  }
  return out;
}

std::unique_ptr<EmbeddingProvider> MakeProvider(const ProviderConfig& config) {
  switch (config.kind) {
    case ProviderKind::kDeterministicTest:
      return std::make_unique<DeterministicProvider>(config);
    case ProviderKind::kModelFile:
      return std::make_unique<BertModelProvider>(config.model_path,
                                                 config.layer);
  }
  throw Error(ErrorCode::kProviderLoad, "unknown provider kind");
}

EmbeddingSequence Embed(const TokenSequence& seq,
                        const ProviderConfig& config) {
  return MakeProvider(config)->Embed(seq);
}

uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t h = kFnvOffsetBasis;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= kFnvPrime;
  }
  return h;
}

std::vector<double> DeterministicVector(std::string_view surface,
                                        std::size_t position,
                                        const ProviderConfig& config) {
  uint64_t h = Fnv1a64(surface) ^ config.seed;
  if (config.contextual) {
    h ^= static_cast<uint64_t>(position) * kPositionMultiplier;
  }
  std::vector<double> v(config.dim);
  for (int j = 0; j < config.dim; ++j) {
    const uint64_t m =
        (h ^ (static_cast<uint64_t>(j + 1) * kGoldenGamma)) * kMixMultiplier;
    v[j] = 2.0 * (static_cast<double>(m) / kTwoPow64) - 1.0;
  }
  return v;
}

DeterministicProvider::DeterministicProvider(const ProviderConfig& config)
    : config_(config) {
  if (config_.dim < 1) {
    throw Error(ErrorCode::kProviderLoad,
                "deterministic provider needs dim >= 1");
  }
  config_.kind = ProviderKind::kDeterministicTest;
  id_ = "deterministic_test(dim=" + std::to_string(config_.dim) +
        ",seed=" + std::to_string(config_.seed) +
        ",contextual=" + (config_.contextual ? "true" : "false") + ")";
}

Matrix DeterministicProvider::ComputeVectors(const TokenSequence& seq) const {
  Matrix out(seq.size(), config_.dim);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const std::vector<double> v =
        DeterministicVector(seq.tokens[i].surface, i, config_);
    std::copy(v.begin(), v.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace bertscore
