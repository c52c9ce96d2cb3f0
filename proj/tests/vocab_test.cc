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

#include "bertscore/vocab.h"

#include <gtest/gtest.h>

#include <sstream>

#include "bertscore/error.h"
#include "test_util.h"

namespace bertscore {
namespace {

ErrorCode CodeOf(const std::string& contents) {
  std::istringstream in(contents);
  try {
    Vocab::FromStream(in);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kProviderRuntime;
}

TEST(VocabTest, IdsAreLineNumbers) {
  std::istringstream in("[PAD]\n[UNK]\n[CLS]\n[SEP]\nhello");
  const Vocab vocab = Vocab::FromStream(in);
  EXPECT_EQ(vocab.size(), 5u);
  EXPECT_EQ(vocab.Find("hello"), 4);
  EXPECT_EQ(vocab.unk_id(), 1);
  EXPECT_EQ(vocab.cls_id(), 2);
  EXPECT_EQ(vocab.sep_id(), 3);
  EXPECT_EQ(vocab.Surface(4), "hello");
  EXPECT_FALSE(vocab.Find("world").has_value());
}

TEST(VocabTest, TrailingNewlineAndCrlfAreIgnored) {
  std::istringstream in("[UNK]\r\n[CLS]\r\n[SEP]\r\nx\n");
  const Vocab vocab = Vocab::FromStream(in);
  EXPECT_EQ(vocab.size(), 4u);
  EXPECT_EQ(vocab.Find("x"), 3);
}

TEST(VocabTest, MissingSpecialIsIncomplete) {
  EXPECT_EQ(CodeOf("[PAD]\n[CLS]\n[SEP]\nhello\n"), ErrorCode::kIncompleteVocab);
  EXPECT_EQ(CodeOf("[UNK]\n[SEP]\n"), ErrorCode::kIncompleteVocab);
  EXPECT_EQ(CodeOf("[UNK]\n[CLS]\n"), ErrorCode::kIncompleteVocab);
}

TEST(VocabTest, DuplicateSurfaceIsRejected) {
  EXPECT_EQ(CodeOf("[UNK]\n[CLS]\n[SEP]\nhi\nhi\n"),
            ErrorCode::kDuplicateVocabEntry);
}

TEST(VocabTest, MissingFileIsReported) {
  EXPECT_THROW(Vocab::FromFile("/nonexistent/vocab.txt"), Error);
}

TEST(VocabTest, FixtureVocabLoads) {
  const Vocab& vocab = testing::FixtureVocab();
  EXPECT_EQ(vocab.size(), 67u);
  EXPECT_EQ(vocab.Find("##aff"), 55);
  EXPECT_TRUE(vocab.lowercase());
}

// The published bert-base-uncased vocab has 30522 lines. Set
// BERTSCORE_BERT_VOCAB to its path to check it loads; it is not committed.
TEST(VocabTest, PublishedUncasedVocabIfAvailable) {
  const char* path = std::getenv("BERTSCORE_BERT_VOCAB");
  if (path == nullptr) GTEST_SKIP() << "BERTSCORE_BERT_VOCAB not set";
  EXPECT_EQ(Vocab::FromFile(path).size(), 30522u);
}

}  // namespace
}  // namespace bertscore
