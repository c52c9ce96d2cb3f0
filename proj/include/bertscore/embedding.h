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

// Token embedding providers. A provider maps a TokenSequence to one vector
// per token, special tokens included.

#ifndef BERTSCORE_EMBEDDING_H_
#define BERTSCORE_EMBEDDING_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bertscore/matrix.h"
#include "bertscore/tokenizer.h"

namespace bertscore {

enum class ProviderKind { kDeterministicTest, kModelFile };

// Accepts "test" / "deterministic_test" and "model" / "model_file".
std::optional<ProviderKind> ParseProviderKind(std::string_view name);
std::string_view ProviderKindName(ProviderKind kind);

struct ProviderConfig {
  ProviderKind kind = ProviderKind::kDeterministicTest;

  // kDeterministicTest only.
  int dim = 8;
  uint64_t seed = 0;
  bool contextual = false;

  // kModelFile only. A checkpoint directory (config.json + model.safetensors)
  // or the .safetensors file itself.
  std::filesystem::path model_path;
  // Hidden-state index: 0 is the embedding layer output, negative values
  // count back from the last encoder layer (-1).
  int layer = -1;
};

struct EmbeddingSequence {
  TokenSequence tokens;
  Matrix vectors;  // tokens.size() x dim
  std::string provider_id;

  std::size_t dim() const { return vectors.cols(); }
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  // Checks the row count and that every entry is finite; a provider that
  // violates either throws Error(kProviderRuntime). Safe to call
  // concurrently.
  EmbeddingSequence Embed(const TokenSequence& seq) const;

  virtual std::size_t dim() const = 0;
  virtual const std::string& id() const = 0;
  virtual ProviderKind kind() const = 0;

 protected:
  virtual Matrix ComputeVectors(const TokenSequence& seq) const = 0;
};

// Throws Error(kProviderLoad) when a model file cannot be loaded.
std::unique_ptr<EmbeddingProvider> MakeProvider(const ProviderConfig& config);

// Convenience wrapper: MakeProvider(config)->Embed(seq).
EmbeddingSequence Embed(const TokenSequence& seq, const ProviderConfig& config);

// 64-bit FNV-1a over raw bytes.
uint64_t Fnv1a64(std::string_view bytes);

// Hash-derived pseudo-embedding with every component in [-1, 1). Integer
// arithmetic wraps mod 2^64, so the output is bit-reproducible:
//   h = fnv1a64(surface) ^ seed ^ (contextual ? position * C_pos : 0)
//   m_j = (h ^ (j + 1) * C_gamma) * C_mix
//   v_j = 2 * (double(m_j) / 2^64) - 1
std::vector<double> DeterministicVector(std::string_view surface,
                                        std::size_t position,
                                        const ProviderConfig& config);

class DeterministicProvider final : public EmbeddingProvider {
 public:
  explicit DeterministicProvider(const ProviderConfig& config);

  std::size_t dim() const override { return config_.dim; }
  const std::string& id() const override { return id_; }
  ProviderKind kind() const override {
    return ProviderKind::kDeterministicTest;
  }
  const ProviderConfig& config() const { return config_; }

 protected:
  Matrix ComputeVectors(const TokenSequence& seq) const override;

 private:
  ProviderConfig config_;
  std::string id_;
};

}  // namespace bertscore

#endif  // BERTSCORE_EMBEDDING_H_
