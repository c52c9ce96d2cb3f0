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

#include "bertscore/bert_model.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <utility>

#include "bertscore/error.h"
#include "json.hpp"

namespace bertscore {
namespace {

using json = nlohmann::json;

[[noreturn]] void LoadError(const std::string& message) {
  throw Error(ErrorCode::kProviderLoad, message);
}

float HalfToFloat(uint16_t h) {
  const uint32_t sign = (h & 0x8000u) << 16;
  uint32_t exponent = (h >> 10) & 0x1Fu;
  uint32_t mantissa = h & 0x3FFu;
  uint32_t bits;
  if (exponent == 0x1F) {
    bits = sign | 0x7F800000u | (mantissa << 13);
  } else if (exponent != 0) {
    bits = sign | ((exponent + 112) << 23) | (mantissa << 13);
  } else if (mantissa == 0) {
    bits = sign;
  } else {
    // Subnormal half: renormalize.
    exponent = 113;
    while ((mantissa & 0x400u) == 0) {
      mantissa <<= 1;
      --exponent;
    }
    bits = sign | (exponent << 23) | ((mantissa & 0x3FFu) << 13);
  }
  float f;
  std::memcpy(&f, &bits, sizeof f);
  return f;
}

float Bf16ToFloat(uint16_t b) {
  const uint32_t bits = static_cast<uint32_t>(b) << 16;
  float f;
  std::memcpy(&f, &bits, sizeof f);
  return f;
}

std::size_t DtypeSize(const std::string& dtype) {
  if (dtype == "F32") return 4;
  if (dtype == "F16" || dtype == "BF16") return 2;
  return 0;
}

// Checkpoints differ in prefix ("bert.") and LayerNorm naming (gamma/beta).
std::string FindTensor(const SafetensorsFile& file, const std::string& name) {
  std::vector<std::string> candidates = {name, "bert." + name};
  auto swap_suffix = [&](const std::string& from, const std::string& to) {
    if (name.ends_with(from)) {
      const std::string alt = name.substr(0, name.size() - from.size()) + to;
      candidates.push_back(alt);
      candidates.push_back("bert." + alt);
    }
  };
  swap_suffix("LayerNorm.weight", "LayerNorm.gamma");
  swap_suffix("LayerNorm.bias", "LayerNorm.beta");
  for (const std::string& candidate : candidates) {
    if (file.Has(candidate)) return candidate;
  }
  LoadError("checkpoint is missing tensor " + name);
}

RowMatrixF Tensor(const SafetensorsFile& file, const std::string& name,
                  Eigen::Index rows, Eigen::Index cols) {
  RowMatrixF m = file.Get(FindTensor(file, name));
  if (m.rows() != rows || m.cols() != cols) {
    LoadError("tensor " + name + " has shape " + std::to_string(m.rows()) +
              "x" + std::to_string(m.cols()) + ", expected " +
              std::to_string(rows) + "x" + std::to_string(cols));
  }
  return m;
}

Eigen::RowVectorXf Vector(const SafetensorsFile& file, const std::string& name,
                          Eigen::Index size) {
  return Tensor(file, name, 1, size).row(0);
}

}  // namespace

SafetensorsFile SafetensorsFile::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) LoadError("cannot open " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return Parse(std::move(bytes));
}

SafetensorsFile SafetensorsFile::Parse(std::vector<char> bytes) {
  SafetensorsFile file;
  if (bytes.size() < 8) LoadError("safetensors file is truncated");
  uint64_t header_size = 0;
  for (int i = 7; i >= 0; --i) {
    header_size = (header_size << 8) | static_cast<unsigned char>(bytes[i]);
  }
  if (header_size > bytes.size() - 8) {
    LoadError("safetensors header length exceeds file size");
  }
  json header = json::parse(bytes.begin() + 8,
                            bytes.begin() + 8 + header_size, nullptr, false);
  if (header.is_discarded() || !header.is_object()) {
    LoadError("safetensors header is not a JSON object");
  }
  file.data_offset_ = 8 + header_size;
  const std::size_t data_size = bytes.size() - file.data_offset_;

  for (const auto& [name, entry] : header.items()) {
    if (name == "__metadata__") continue;
    try {
      TensorInfo info;
      info.dtype = entry.at("dtype").get<std::string>();
      info.shape = entry.at("shape").get<std::vector<int64_t>>();
      const auto offsets = entry.at("data_offsets").get<std::vector<uint64_t>>();
      if (offsets.size() != 2) LoadError("bad data_offsets for " + name);
      info.begin = offsets[0];
      info.end = offsets[1];
      if (info.begin > info.end || info.end > data_size) {
        LoadError("data_offsets out of range for " + name);
      }
      file.tensors_.emplace(name, std::move(info));
    } catch (const json::exception& e) {
      LoadError("malformed header entry for " + name + ": " + e.what());
    }
  }
  file.bytes_ = std::move(bytes);
  return file;
}

RowMatrixF SafetensorsFile::Get(const std::string& name) const {
  auto it = tensors_.find(name);
  if (it == tensors_.end()) LoadError("no tensor named " + name);
  const TensorInfo& info = it->second;
  const std::size_t elem = DtypeSize(info.dtype);
  if (elem == 0) LoadError("unsupported dtype " + info.dtype + " for " + name);
  if (info.shape.empty() || info.shape.size() > 2) {
    LoadError("tensor " + name + " is not 1-D or 2-D");
  }
  const Eigen::Index rows = info.shape.size() == 2 ? info.shape[0] : 1;
  const Eigen::Index cols = info.shape.back();
  if (rows < 0 || cols < 0 ||
      static_cast<std::size_t>(rows * cols) * elem != info.end - info.begin) {
    LoadError("tensor " + name + " byte size does not match its shape");
  }

  RowMatrixF out(rows, cols);
  const char* src = bytes_.data() + data_offset_ + info.begin;
  float* dst = out.data();
  const std::size_t count = static_cast<std::size_t>(rows * cols);
  if (info.dtype == "F32") {
    std::memcpy(dst, src, count * sizeof(float));
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      uint16_t half;
      std::memcpy(&half, src + 2 * i, 2);
      dst[i] = info.dtype == "F16" ? HalfToFloat(half) : Bf16ToFloat(half);
    }
  }
  return out;
}

BertConfig LoadBertConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) LoadError("cannot open " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) LoadError(path.string() + " is not valid JSON");
  BertConfig config;
  try {
    config.vocab_size = j.at("vocab_size").get<int>();
    config.hidden_size = j.at("hidden_size").get<int>();
    config.num_hidden_layers = j.at("num_hidden_layers").get<int>();
    config.num_attention_heads = j.at("num_attention_heads").get<int>();
    config.intermediate_size = j.at("intermediate_size").get<int>();
    config.max_position_embeddings = j.at("max_position_embeddings").get<int>();
    config.type_vocab_size = j.value("type_vocab_size", 2);
    config.layer_norm_eps = j.value("layer_norm_eps", 1e-12);
    config.hidden_act = j.value("hidden_act", std::string("gelu"));
  } catch (const json::exception& e) {
    LoadError(path.string() + ": " + e.what());
  }
  if (config.hidden_size <= 0 || config.num_attention_heads <= 0 ||
      config.hidden_size % config.num_attention_heads != 0) {
    LoadError("hidden_size must be a positive multiple of num_attention_heads");
  }
  if (config.hidden_act != "gelu" && config.hidden_act != "gelu_new" &&
      config.hidden_act != "gelu_pytorch_tanh" && config.hidden_act != "relu") {
    LoadError("unsupported hidden_act " + config.hidden_act);
  }
  return config;
}

BertEncoder::BertEncoder(const BertConfig& config,
                         const SafetensorsFile& weights)
    : config_(config) {
  const Eigen::Index h = config.hidden_size;
  const Eigen::Index inter = config.intermediate_size;
  word_embeddings_ = Tensor(weights, "embeddings.word_embeddings.weight",
                            config.vocab_size, h);
  position_embeddings_ =
      Tensor(weights, "embeddings.position_embeddings.weight",
             config.max_position_embeddings, h);
  token_type_embeddings_ =
      Tensor(weights, "embeddings.token_type_embeddings.weight",
             config.type_vocab_size, h);
  embedding_norm_ = {Vector(weights, "embeddings.LayerNorm.weight", h),
                     Vector(weights, "embeddings.LayerNorm.bias", h)};

  auto linear = [&](const std::string& prefix, Eigen::Index out,
                    Eigen::Index in) {
    return Linear{Tensor(weights, prefix + ".weight", out, in),
                  Vector(weights, prefix + ".bias", out)};
  };
  auto norm = [&](const std::string& prefix) {
    return LayerNorm{Vector(weights, prefix + ".weight", h),
                     Vector(weights, prefix + ".bias", h)};
  };
  for (int i = 0; i < config.num_hidden_layers; ++i) {
    const std::string p = "encoder.layer." + std::to_string(i) + ".";
    Layer layer;
    layer.query = linear(p + "attention.self.query", h, h);
    layer.key = linear(p + "attention.self.key", h, h);
    layer.value = linear(p + "attention.self.value", h, h);
    layer.attention_out = linear(p + "attention.output.dense", h, h);
    layer.attention_norm = norm(p + "attention.output.LayerNorm");
    layer.intermediate = linear(p + "intermediate.dense", inter, h);
    layer.output = linear(p + "output.dense", h, inter);
    layer.output_norm = norm(p + "output.LayerNorm");
    layers_.push_back(std::move(layer));
  }
}

RowMatrixF BertEncoder::Apply(const Linear& linear, const RowMatrixF& x) const {
  RowMatrixF y = x * linear.weight.transpose();
  y.rowwise() += linear.bias;
  return y;
}

RowMatrixF BertEncoder::Normalize(const LayerNorm& norm,
                                  const RowMatrixF& x) const {
  RowMatrixF y(x.rows(), x.cols());
  const float eps = static_cast<float>(config_.layer_norm_eps);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const float mean = x.row(r).mean();
    const Eigen::RowVectorXf centered = x.row(r).array() - mean;
    const float var = centered.squaredNorm() / static_cast<float>(x.cols());
    y.row(r) = (centered / std::sqrt(var + eps)).cwiseProduct(norm.gamma) +
               norm.beta;
  }
  return y;
}

RowMatrixF BertEncoder::Activation(RowMatrixF x) const {
  if (config_.hidden_act == "relu") return x.cwiseMax(0.0f);
  if (config_.hidden_act == "gelu") {
    return x.unaryExpr([](float v) {
      return 0.5f * v * (1.0f + std::erf(v / std::sqrt(2.0f)));
    });
  }
  return x.unaryExpr([](float v) {
    const float c = std::sqrt(2.0f / static_cast<float>(M_PI));
    return 0.5f * v * (1.0f + std::tanh(c * (v + 0.044715f * v * v * v)));
  });
}

RowMatrixF BertEncoder::RunLayer(const Layer& layer,
                                 const RowMatrixF& x) const {
  const Eigen::Index n = x.rows();
  const Eigen::Index heads = config_.num_attention_heads;
  const Eigen::Index head_dim = config_.hidden_size / heads;
  const RowMatrixF q = Apply(layer.query, x);
  const RowMatrixF k = Apply(layer.key, x);
  const RowMatrixF v = Apply(layer.value, x);
  const float scale = 1.0f / std::sqrt(static_cast<float>(head_dim));

  RowMatrixF context(n, config_.hidden_size);
  for (Eigen::Index head = 0; head < heads; ++head) {
    const Eigen::Index off = head * head_dim;
    RowMatrixF scores = q.middleCols(off, head_dim) *
                        k.middleCols(off, head_dim).transpose() * scale;
    for (Eigen::Index r = 0; r < n; ++r) {
      const float max = scores.row(r).maxCoeff();
      scores.row(r) = (scores.row(r).array() - max).exp();
      scores.row(r) /= scores.row(r).sum();
    }
    context.middleCols(off, head_dim) = scores * v.middleCols(off, head_dim);
  }

  const RowMatrixF attended =
      Normalize(layer.attention_norm, Apply(layer.attention_out, context) + x);
  const RowMatrixF hidden = Activation(Apply(layer.intermediate, attended));
  return Normalize(layer.output_norm, Apply(layer.output, hidden) + attended);
}

std::vector<RowMatrixF> BertEncoder::HiddenStates(
    const std::vector<int>& ids) const {
  const auto n = static_cast<Eigen::Index>(ids.size());
  if (n > config_.max_position_embeddings) {
    throw Error(ErrorCode::kProviderRuntime,
                "sequence of " + std::to_string(n) +
                    " tokens exceeds the model's position limit of " +
                    std::to_string(config_.max_position_embeddings));
  }
  RowMatrixF x(n, config_.hidden_size);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ids[i] < 0 || ids[i] >= config_.vocab_size) {
      throw Error(ErrorCode::kProviderRuntime,
                  "token id " + std::to_string(ids[i]) +
                      " is outside the model vocabulary");
    }
    x.row(i) = word_embeddings_.row(ids[i]) + position_embeddings_.row(i) +
               token_type_embeddings_.row(0);
  }
  std::vector<RowMatrixF> states;
  states.reserve(layers_.size() + 1);
  states.push_back(Normalize(embedding_norm_, x));
  for (const Layer& layer : layers_) {
    states.push_back(RunLayer(layer, states.back()));
  }
  return states;
}

namespace {

std::filesystem::path CheckpointDir(const std::filesystem::path& path) {
  return std::filesystem::is_directory(path) ? path : path.parent_path();
}

std::filesystem::path WeightsFile(const std::filesystem::path& path) {
  return std::filesystem::is_directory(path) ? path / "model.safetensors"
                                             : path;
}

}  // namespace

BertModelProvider::BertModelProvider(const std::filesystem::path& model_path,
                                     int layer)
    : BertModelProvider(CheckpointDir(model_path), WeightsFile(model_path),
                        layer) {}

BertModelProvider::BertModelProvider(const std::filesystem::path& model_dir,
                                     const std::filesystem::path& weights_path,
                                     int layer)
    : model_dir_(model_dir),
      encoder_(LoadBertConfig(model_dir / "config.json"),
               SafetensorsFile::Load(weights_path)),
      layer_(layer) {
  const int num_layers = encoder_.config().num_hidden_layers;
  if (layer_ < 0) layer_ += num_layers + 1;
  if (layer_ < 0 || layer_ > num_layers) {
    LoadError("layer " + std::to_string(layer) + " is out of range for a " +
              std::to_string(num_layers) + "-layer model");
  }
  const std::string name = (model_dir_ / "").parent_path().filename().string();
  id_ = "bert_safetensors(model=" + name +
        ",layer=" + std::to_string(layer_) + ")";
}

Matrix BertModelProvider::ComputeVectors(const TokenSequence& seq) const {
  std::vector<int> ids;
  ids.reserve(seq.size());
  for (const Token& token : seq.tokens) ids.push_back(token.id);
  const RowMatrixF hidden = encoder_.HiddenStates(ids)[layer_];
  Matrix out(hidden.rows(), hidden.cols());
  for (Eigen::Index r = 0; r < hidden.rows(); ++r)
    for (Eigen::Index c = 0; c < hidden.cols(); ++c) out(r, c) = hidden(r, c);
  return out;
}

}  // namespace bertscore
