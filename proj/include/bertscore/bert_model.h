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

// CPU inference for BERT encoders stored as Hugging Face checkpoints:
// a config.json next to a model.safetensors file. Only the encoder is run;
// pooler and heads are ignored.

#ifndef BERTSCORE_BERT_MODEL_H_
#define BERTSCORE_BERT_MODEL_H_

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "bertscore/embedding.h"

namespace bertscore {

using RowMatrixF =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Reads the safetensors container: an 8-byte little-endian header length, a
// JSON header describing each tensor, then the raw tensor bytes.
class SafetensorsFile {
 public:
  struct TensorInfo {
    std::string dtype;
    std::vector<int64_t> shape;
    std::size_t begin = 0;  // offsets into the data section
    std::size_t end = 0;
  };

  // Throws Error(kProviderLoad) on malformed input.
  static SafetensorsFile Load(const std::filesystem::path& path);
  static SafetensorsFile Parse(std::vector<char> bytes);

  bool Has(const std::string& name) const { return tensors_.count(name); }
  const std::map<std::string, TensorInfo>& tensors() const { return tensors_; }

  // Tensor as a float matrix; 1-D tensors become a single row. F32, F16 and
  // BF16 are accepted.
  RowMatrixF Get(const std::string& name) const;

 private:
  std::vector<char> bytes_;
  std::size_t data_offset_ = 0;
  std::map<std::string, TensorInfo> tensors_;
};

struct BertConfig {
  int vocab_size = 0;
  int hidden_size = 0;
  int num_hidden_layers = 0;
  int num_attention_heads = 0;
  int intermediate_size = 0;
  int max_position_embeddings = 0;
  int type_vocab_size = 2;
  double layer_norm_eps = 1e-12;
  std::string hidden_act = "gelu";
};

class BertEncoder {
 public:
  BertEncoder(const BertConfig& config, const SafetensorsFile& weights);

  // Hidden states for `ids` (single segment, no padding). Element 0 is the
  // embedding output, element i the output of encoder layer i.
  std::vector<RowMatrixF> HiddenStates(const std::vector<int>& ids) const;

  const BertConfig& config() const { return config_; }

 private:
  struct Linear {
    RowMatrixF weight;  // out x in
    Eigen::RowVectorXf bias;
  };
  struct LayerNorm {
    Eigen::RowVectorXf gamma;
    Eigen::RowVectorXf beta;
  };
  struct Layer {
    Linear query, key, value, attention_out;
    LayerNorm attention_norm;
    Linear intermediate, output;
    LayerNorm output_norm;
  };

  RowMatrixF Apply(const Linear& linear, const RowMatrixF& x) const;
  RowMatrixF Normalize(const LayerNorm& norm, const RowMatrixF& x) const;
  RowMatrixF Activation(RowMatrixF x) const;
  RowMatrixF RunLayer(const Layer& layer, const RowMatrixF& x) const;

  BertConfig config_;
  RowMatrixF word_embeddings_;
  RowMatrixF position_embeddings_;
  RowMatrixF token_type_embeddings_;
  LayerNorm embedding_norm_;
  std::vector<Layer> layers_;
};

// Embedding provider backed by a BertEncoder; each token's vector is its row
// in the selected hidden layer. Inference is const and allocation-local, so
// concurrent Embed calls need no locking.
class BertModelProvider final : public EmbeddingProvider {
 public:
  // Throws Error(kProviderLoad) if the checkpoint is missing, malformed, or
  // `layer` is out of range.
  BertModelProvider(const std::filesystem::path& model_path, int layer);

  std::size_t dim() const override { return encoder_.config().hidden_size; }
  const std::string& id() const override { return id_; }
  ProviderKind kind() const override { return ProviderKind::kModelFile; }

  // Resolved non-negative hidden-state index.
  int layer() const { return layer_; }

  // Directory holding the checkpoint; a vocab.txt there is the companion
  // vocabulary.
  const std::filesystem::path& model_dir() const { return model_dir_; }

 protected:
  Matrix ComputeVectors(const TokenSequence& seq) const override;

 private:
  BertModelProvider(const std::filesystem::path& model_dir,
                    const std::filesystem::path& weights_path, int layer);

  std::filesystem::path model_dir_;
  BertEncoder encoder_;
  int layer_;
  std::string id_;
};

// Parses a Hugging Face config.json. Throws Error(kProviderLoad).
BertConfig LoadBertConfig(const std::filesystem::path& path);

}  // namespace bertscore

#endif  // BERTSCORE_BERT_MODEL_H_
