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

#ifndef BERTSCORE_TESTS_TEST_UTIL_H_
#define BERTSCORE_TESTS_TEST_UTIL_H_

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bertscore/embedding.h"
#include "bertscore/error.h"
#include "bertscore/version.h"
#include "bertscore/vocab.h"

namespace bertscore::testing {

inline std::filesystem::path FixturePath(const std::string& name) {
  return std::filesystem::path(BERTSCORE_FIXTURE_DIR) / name;
}

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> ReadLines(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

inline const Vocab& FixtureVocab() {
  static const Vocab vocab = Vocab::FromFile(FixturePath("vocab.txt"));
  return vocab;
}

inline const std::vector<std::string>& FixtureWords() {
  static const std::vector<std::string> words =
      ReadLines(FixturePath("words.txt"));
  return words;
}

// The committed v1 body for ("the cat sat", "a cat sat"), with this build's
// engine version filled in.
inline std::string GoldenScoreBody() {
  std::string body = ReadFile(FixturePath("golden_score_v1.json"));
  const std::string placeholder = "@ENGINE_VERSION@";
  body.replace(body.find(placeholder), placeholder.size(), kEngineVersion);
  return body;
}

inline uint64_t Bits(double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  return bits;
}

inline double ParseHexDouble(const std::string& hex) {
  return std::strtod(hex.c_str(), nullptr);
}

// 1..max_words words drawn from the fixture word list.
inline std::string RandomText(std::mt19937_64& rng, int max_words = 8) {
  const auto& words = FixtureWords();
  std::uniform_int_distribution<int> count(1, max_words);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::string text;
  for (int i = count(rng); i > 0; --i) {
    if (!text.empty()) text += ' ';
    text += words[pick(rng)];
  }
  return text;
}

inline std::string RandomWord(std::mt19937_64& rng) {
  const auto& words = FixtureWords();
  return words[std::uniform_int_distribution<std::size_t>(
      0, words.size() - 1)(rng)];
}

// Always fails inference.
class FailingProvider final : public EmbeddingProvider {
 public:
  std::size_t dim() const override { return 8; }
  const std::string& id() const override { return id_; }
  ProviderKind kind() const override { return ProviderKind::kModelFile; }

 protected:
  Matrix ComputeVectors(const TokenSequence&) const override {
    throw Error(ErrorCode::kProviderRuntime, "inference backend crashed");
  }

 private:
  std::string id_ = "failing";
};

// Deterministic vectors after a fixed delay.
class SlowProvider final : public EmbeddingProvider {
 public:
  explicit SlowProvider(std::chrono::milliseconds delay)
      : delay_(delay), inner_(ProviderConfig{}) {}

  std::size_t dim() const override { return inner_.dim(); }
  const std::string& id() const override { return inner_.id(); }
  ProviderKind kind() const override { return inner_.kind(); }

 protected:
  Matrix ComputeVectors(const TokenSequence& seq) const override {
    std::this_thread::sleep_for(delay_);
    return inner_.Embed(seq).vectors;
  }

 private:
  std::chrono::milliseconds delay_;
  DeterministicProvider inner_;
};

}  // namespace bertscore::testing

#endif  // BERTSCORE_TESTS_TEST_UTIL_H_
