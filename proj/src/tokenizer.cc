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

#include "bertscore/tokenizer.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cstdint>
#include <stdexcept>

#include "bertscore/error.h"

namespace bertscore {
namespace {

const icu::Normalizer2& NfcInstance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC unavailable");
  return *nfc;
}

const icu::Normalizer2& NfdInstance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfd = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFD unavailable");
  return *nfd;
}

icu::UnicodeString ApplyNormalizer(const icu::Normalizer2& normalizer,
                                   const icu::UnicodeString& in) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = normalizer.normalize(in, status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");
  return out;
}

bool IsWhitespace(UChar32 c) { return u_isUWhiteSpace(c); }

bool IsControl(UChar32 c) {
  if (c == 0 || c == 0xFFFD) return true;
  const int8_t type = u_charType(c);
  return type == U_CONTROL_CHAR || type == U_FORMAT_CHAR;
}

// Calls fn(codepoint, byte_begin, byte_end) for each codepoint. Ill-formed
// sequences surface as U+FFFD spanning the offending bytes.
template <typename Fn>
void ForEachCodepoint(std::string_view text, Fn&& fn) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t begin = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) c = 0xFFFD;
    fn(c, static_cast<std::size_t>(begin), static_cast<std::size_t>(i));
  }
}

}  // namespace

bool IsPunctuation(char32_t c) {
  if ((c >= 33 && c <= 47) || (c >= 58 && c <= 64) || (c >= 91 && c <= 96) ||
      (c >= 123 && c <= 126)) {
    return true;
  }
  return (U_GET_GC_MASK(static_cast<UChar32>(c)) & U_GC_P_MASK) != 0;
}

std::string Normalize(std::string_view text, bool lowercase) {
  icu::UnicodeString u = ApplyNormalizer(
      NfcInstance(),
      icu::UnicodeString::fromUTF8(icu::StringPiece(
          text.data(), static_cast<int32_t>(text.size()))));

  icu::UnicodeString cleaned;
  for (int32_t i = 0; i < u.length();) {
    const UChar32 c = u.char32At(i);
    i += U16_LENGTH(c);
    if (IsWhitespace(c)) {
      cleaned.append(static_cast<UChar>(u' '));
    } else if (!IsControl(c)) {
      cleaned.append(c);
    }
  }

  if (lowercase) {
    cleaned.foldCase(U_FOLD_CASE_DEFAULT);
    const icu::UnicodeString decomposed =
        ApplyNormalizer(NfdInstance(), cleaned);
    icu::UnicodeString stripped;
    for (int32_t i = 0; i < decomposed.length();) {
      const UChar32 c = decomposed.char32At(i);
      i += U16_LENGTH(c);
      if (u_charType(c) != U_NON_SPACING_MARK) stripped.append(c);
    }
    cleaned = ApplyNormalizer(NfcInstance(), stripped);
  }

  std::string utf8;
  cleaned.toUTF8String(utf8);

  // Collapse runs of spaces and trim.
  std::string out;
  out.reserve(utf8.size());
  bool pending_space = false;
  for (char ch : utf8) {
    if (ch == ' ') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(ch);
  }
  return out;
}

std::vector<Word> PreTokenize(std::string_view text) {
  std::vector<Word> words;
  std::size_t word_begin = 0;
  bool in_word = false;
  auto flush = [&](std::size_t end) {
    if (!in_word) return;
    words.push_back(
        {std::string(text.substr(word_begin, end - word_begin)),
         {word_begin, end}});
    in_word = false;
  };
  ForEachCodepoint(text, [&](UChar32 c, std::size_t begin, std::size_t end) {
    if (IsWhitespace(c)) {
      flush(begin);
    } else if (IsPunctuation(static_cast<char32_t>(c))) {
      flush(begin);
      words.push_back(
          {std::string(text.substr(begin, end - begin)), {begin, end}});
    } else if (!in_word) {
      in_word = true;
      word_begin = begin;
    }
  });
  flush(text.size());
  return words;
}

std::vector<Piece> WordPiece(std::string_view word, const Vocab& vocab) {
  // Codepoint boundaries; candidate prefixes only end on these.
  std::vector<std::size_t> bounds;
  ForEachCodepoint(word, [&](UChar32, std::size_t begin, std::size_t) {
    bounds.push_back(begin);
  });
  bounds.push_back(word.size());
  const std::size_t codepoints = bounds.size() - 1;

  const std::vector<Piece> unknown = {
      {std::string(kUnkSurface), {0, word.size()}}};
  if (codepoints > kMaxWordCodepoints) return unknown;

  std::vector<Piece> pieces;
  std::string candidate;
  std::size_t start = 0;
  while (start < codepoints) {
    std::size_t end = codepoints;
    bool found = false;
    for (; end > start; --end) {
      candidate.clear();
      if (start > 0) candidate = "##";
      candidate.append(word.substr(bounds[start], bounds[end] - bounds[start]));
      if (vocab.Contains(candidate)) {
        found = true;
        break;
      }
    }
    if (!found) return unknown;
    pieces.push_back({candidate, {bounds[start], bounds[end]}});
    start = end;
  }
  return pieces;
}

TokenSequence Tokenize(std::string_view text, const Vocab& vocab,
                       const TokenizeOptions& options) {
  TokenSequence seq;
  seq.original_text = Normalize(text, vocab.lowercase());
  seq.tokens.push_back({std::string(kClsSurface), vocab.cls_id(), {}, true,
                        false});
  for (const Word& word : PreTokenize(seq.original_text)) {
    for (Piece& piece : WordPiece(word.text, vocab)) {
      Token token;
      token.id = *vocab.Find(piece.surface);
      token.is_subword = piece.surface.starts_with("##");
      token.char_span = {word.span.begin + piece.span.begin,
                         word.span.begin + piece.span.end};
      token.surface = std::move(piece.surface);
      seq.tokens.push_back(std::move(token));
    }
  }
  if (seq.tokens.size() == 1) {
    throw Error(ErrorCode::kEmptyInput, "input has no tokens");
  }
  if (seq.tokens.size() + 1 > kMaxSequenceLength) {
    if (!options.truncate) {
      throw Error(ErrorCode::kSequenceTooLong,
                  "sequence has " + std::to_string(seq.tokens.size() + 1) +
                      " tokens, limit is " +
                      std::to_string(kMaxSequenceLength));
    }
    seq.tokens.resize(kMaxSequenceLength - 1);
  }
  seq.tokens.push_back({std::string(kSepSurface), vocab.sep_id(), {}, true,
                        false});
  return seq;
}

}  // namespace bertscore
