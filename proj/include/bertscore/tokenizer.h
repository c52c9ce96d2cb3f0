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

// BERT-style text tokenization: normalization, whitespace/punctuation
// splitting, and greedy longest-match-first WordPiece.
//
// All offsets are byte offsets into the normalized UTF-8 text.

#ifndef BERTSCORE_TOKENIZER_H_
#define BERTSCORE_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bertscore/vocab.h"

namespace bertscore {

inline constexpr std::size_t kMaxSequenceLength = 512;
inline constexpr std::size_t kMaxWordCodepoints = 100;

// Half-open [begin, end) byte range.
struct ByteSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  friend bool operator==(const ByteSpan&, const ByteSpan&) = default;
};

struct Token {
  std::string surface;  // continuation pieces keep their "##" prefix
  int id = 0;
  ByteSpan char_span;  // empty for [CLS]/[SEP]
  bool is_special = false;
  bool is_subword = false;

  friend bool operator==(const Token&, const Token&) = default;
};

// [CLS] content... [SEP], with at least one content token.
struct TokenSequence {
  std::vector<Token> tokens;
  std::string original_text;  // the normalized input

  std::size_t size() const { return tokens.size(); }
  friend bool operator==(const TokenSequence&,
                         const TokenSequence&) = default;
};

struct Word {
  std::string text;
  ByteSpan span;

  friend bool operator==(const Word&, const Word&) = default;
};

// One WordPiece output; `span` is relative to the start of the word.
struct Piece {
  std::string surface;
  ByteSpan span;

  friend bool operator==(const Piece&, const Piece&) = default;
};

struct TokenizeOptions {
  // Keep [CLS] + the first 510 content tokens + [SEP] instead of failing
  // with kSequenceTooLong.
  bool truncate = false;
};

// NFC; control characters dropped; whitespace runs collapsed to one ASCII
// space and trimmed. With `lowercase`, also case-folded and stripped of
// nonspacing marks (the uncased-checkpoint convention).
std::string Normalize(std::string_view text, bool lowercase);

// Splits on whitespace and isolates every punctuation codepoint.
std::vector<Word> PreTokenize(std::string_view text);

// Greedy longest-prefix match. Any unmatched position, or a word longer than
// kMaxWordCodepoints, yields a single [UNK] piece covering the whole word.
std::vector<Piece> WordPiece(std::string_view word, const Vocab& vocab);

// Throws Error(kEmptyInput) or Error(kSequenceTooLong).
TokenSequence Tokenize(std::string_view text, const Vocab& vocab,
                       const TokenizeOptions& options = {});

// True for ASCII symbol ranges and any Unicode P* codepoint.
bool IsPunctuation(char32_t c);

}  // namespace bertscore

#endif  // BERTSCORE_TOKENIZER_H_
