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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <future>
#include <string>
#include <vector>

#include "bertscore/error.h"
#include "bertscore/score.h"
#include "json.hpp"
#include "test_util.h"

namespace bertscore {
namespace {

using nlohmann::json;
using testing::FixturePath;

const json& Expected() {
  static const json expected = json::parse(
      testing::ReadFile(FixturePath("tiny_bert_expected.json")));
  return expected;
}

const Vocab& TinyVocab() {
  static const Vocab vocab =
      Vocab::FromFile(FixturePath("tiny_bert") / "vocab.txt");
  return vocab;
}

ErrorCode LoadCode(const std::filesystem::path& path, int layer = -1) {
  try {
    BertModelProvider provider(path, layer);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a load error";
  return ErrorCode::kProviderRuntime;
}

TEST(BertModelTest, TokenizationMatchesReferenceIds) {
  const TokenSequence seq = Tokenize("Hello world, the cat sat", TinyVocab());
  std::vector<int> ids;
  std::vector<std::string> surfaces;
  for (const Token& t : seq.tokens) {
    ids.push_back(t.id);
    surfaces.push_back(t.surface);
  }
  EXPECT_EQ(ids, Expected()["input_ids"].get<std::vector<int>>());
  EXPECT_EQ(surfaces, Expected()["surfaces"].get<std::vector<std::string>>());
}

TEST(BertModelTest, EveryLayerMatchesReferenceHiddenStates) {
  const TokenSequence seq = Tokenize("Hello world, the cat sat", TinyVocab());
  const auto& layers = Expected()["hidden_states"];
  for (int layer = 0; layer < static_cast<int>(layers.size()); ++layer) {
    SCOPED_TRACE("layer " + std::to_string(layer));
    const BertModelProvider provider(FixturePath("tiny_bert"), layer);
    EXPECT_EQ(provider.layer(), layer);
    const EmbeddingSequence emb = provider.Embed(seq);
    ASSERT_EQ(emb.vectors.rows(), layers[layer].size());
    ASSERT_EQ(emb.vectors.cols(), 16u);
    double worst = 0.0;
    for (std::size_t r = 0; r < emb.vectors.rows(); ++r) {
      for (std::size_t c = 0; c < emb.vectors.cols(); ++c) {
        worst = std::max(worst, std::abs(emb.vectors(r, c) -
                                         layers[layer][r][c].get<double>()));
      }
    }
    EXPECT_LT(worst, 1e-4);
  }
}

TEST(BertModelTest, NegativeLayersCountFromTheTop) {
  EXPECT_EQ(BertModelProvider(FixturePath("tiny_bert"), -1).layer(), 2);
  EXPECT_EQ(BertModelProvider(FixturePath("tiny_bert"), -3).layer(), 0);
  const BertModelProvider direct(
      FixturePath("tiny_bert") / "model.safetensors", -1);
  EXPECT_EQ(direct.id(), "bert_safetensors(model=tiny_bert,layer=2)");
  EXPECT_EQ(direct.model_dir(), FixturePath("tiny_bert"));
  EXPECT_EQ(direct.dim(), 16u);
}

TEST(BertModelTest, LoadFailures) {
  EXPECT_EQ(LoadCode("/nonexistent"), ErrorCode::kProviderLoad);
  EXPECT_EQ(LoadCode(FixturePath("tiny_bert"), 3), ErrorCode::kProviderLoad);
  EXPECT_EQ(LoadCode(FixturePath("tiny_bert"), -4), ErrorCode::kProviderLoad);
  // A directory without a checkpoint.
  EXPECT_EQ(LoadCode(FixturePath("")), ErrorCode::kProviderLoad);
}

TEST(BertModelTest, IdsOutsideTheModelVocabAreARuntimeError) {
  const BertModelProvider provider(FixturePath("tiny_bert"), -1);
  TokenSequence seq = Tokenize("cat", TinyVocab());
  seq.tokens[1].id = 1000;
  try {
    provider.Embed(seq);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProviderRuntime);
  }
}

TEST(BertModelTest, SequencesLongerThanPositionTableFail) {
  const BertModelProvider provider(FixturePath("tiny_bert"), -1);
  std::string text;
  for (int i = 0; i < 40; ++i) text += "cat ";
  try {
    provider.Embed(Tokenize(text, TinyVocab()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProviderRuntime);
  }
}

TEST(BertModelTest, ConcurrentEmbeddingIsDeterministic) {
  const BertModelProvider provider(FixturePath("tiny_bert"), -1);
  const TokenSequence seq = Tokenize("the quick brown fox", TinyVocab());
  const Matrix expected = provider.Embed(seq).vectors;
  std::vector<std::future<Matrix>> futures;
  for (int i = 0; i < 8; ++i) {
    futures.push_back(std::async(std::launch::async,
                                 [&] { return provider.Embed(seq).vectors; }));
  }
  for (auto& f : futures) EXPECT_EQ(f.get(), expected);
}

TEST(BertModelTest, ScoresThroughTheEngine) {
  const BertModelProvider provider(FixturePath("tiny_bert"), -1);
  const ScoreReport same =
      Score("the cat sat", "the cat sat", TinyVocab(), provider);
  EXPECT_NEAR(same.f1, 1.0, 1e-6);
  const ScoreReport diff =
      Score("the cat sat", "a big dog ran", TinyVocab(), provider);
  EXPECT_LT(diff.f1, 1.0);
}

std::vector<char> BuildSafetensors(const json& header,
                                   const std::vector<uint8_t>& data) {
  const std::string text = header.dump();
  std::vector<char> bytes(8);
  uint64_t n = text.size();
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((n >> (8 * i)) & 0xFF);
  bytes.insert(bytes.end(), text.begin(), text.end());
  bytes.insert(bytes.end(), data.begin(), data.end());
  return bytes;
}

TEST(SafetensorsTest, DecodesHalfPrecisionFormats) {
  // F16: 1.0 = 0x3C00, -2.0 = 0xC000, 65504 = 0x7BFF, smallest subnormal
  // 0x0001 = 2^-24. BF16: 1.0 = 0x3F80, -0.5 = 0xBF00. Little-endian.
  const std::vector<uint8_t> data = {0x00, 0x3C, 0x00, 0xC0, 0xFF, 0x7B,
                                     0x01, 0x00, 0x80, 0x3F, 0x00, 0xBF};
  const json header = {
      {"half", {{"dtype", "F16"}, {"shape", {2, 2}}, {"data_offsets", {0, 8}}}},
      {"brain", {{"dtype", "BF16"}, {"shape", {2}}, {"data_offsets", {8, 12}}}},
      {"__metadata__", {{"format", "pt"}}}};
  const SafetensorsFile file =
      SafetensorsFile::Parse(BuildSafetensors(header, data));
  EXPECT_TRUE(file.Has("half"));
  EXPECT_FALSE(file.Has("__metadata__"));
  const RowMatrixF half = file.Get("half");
  ASSERT_EQ(half.rows(), 2);
  ASSERT_EQ(half.cols(), 2);
  EXPECT_EQ(half(0, 0), 1.0f);
  EXPECT_EQ(half(0, 1), -2.0f);
  EXPECT_EQ(half(1, 0), 65504.0f);
  EXPECT_EQ(half(1, 1), std::ldexp(1.0f, -24));
  const RowMatrixF brain = file.Get("brain");
  ASSERT_EQ(brain.rows(), 1);
  EXPECT_EQ(brain(0, 0), 1.0f);
  EXPECT_EQ(brain(0, 1), -0.5f);
}

TEST(SafetensorsTest, RejectsMalformedFiles) {
  auto code = [](std::vector<char> bytes) {
    try {
      const SafetensorsFile file = SafetensorsFile::Parse(std::move(bytes));
      if (file.Has("t")) file.Get("t");
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kProviderRuntime;
  };
  EXPECT_EQ(code({1, 2, 3}), ErrorCode::kProviderLoad);
  EXPECT_EQ(code(BuildSafetensors(json::array(), {})), ErrorCode::kProviderLoad);
  // Data offsets beyond the buffer.
  EXPECT_EQ(code(BuildSafetensors(
                {{"t", {{"dtype", "F32"}, {"shape", {4}}, {"data_offsets", {0, 16}}}}},
                {0, 0, 0, 0})),
            ErrorCode::kProviderLoad);
  // Shape and byte count disagree.
  EXPECT_EQ(code(BuildSafetensors(
                {{"t", {{"dtype", "F32"}, {"shape", {2}}, {"data_offsets", {0, 4}}}}},
                {0, 0, 0, 0})),
            ErrorCode::kProviderLoad);
  // Unsupported dtype.
  EXPECT_EQ(code(BuildSafetensors(
                {{"t", {{"dtype", "I64"}, {"shape", {1}}, {"data_offsets", {0, 8}}}}},
                std::vector<uint8_t>(8))),
            ErrorCode::kProviderLoad);
}

TEST(BertConfigTest, ReadsFixtureConfig) {
  const BertConfig config =
      LoadBertConfig(FixturePath("tiny_bert") / "config.json");
  EXPECT_EQ(config.hidden_size, 16);
  EXPECT_EQ(config.num_hidden_layers, 2);
  EXPECT_EQ(config.num_attention_heads, 4);
  EXPECT_EQ(config.vocab_size, 67);
  EXPECT_EQ(config.max_position_embeddings, 32);
}

}  // namespace
}  // namespace bertscore
