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

// BERTScore over two embedded token sequences.
//
// For reference vectors x_1..x_k and candidate vectors y_1..y_m (special
// tokens excluded):
//
//   R  = (1/k) * sum_i max_j cos(x_i, y_j)
//   P  = (1/m) * sum_j max_i cos(x_i, y_j)
//   F1 = 2PR / (P + R)
//
// Each max also yields a best-match edge; tokens that no opposing token
// picks as its best match are reported as unmatched.

#ifndef BERTSCORE_SCORE_H_
#define BERTSCORE_SCORE_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bertscore/embedding.h"
#include "bertscore/matrix.h"
#include "bertscore/tokenizer.h"
#include "bertscore/vocab.h"

namespace bertscore {

// k x m cosine similarities between scoring (non-special) tokens.
struct SimilarityMatrix {
  Matrix values;
  // Row/column -> position in the originating TokenSequence.
  std::vector<std::size_t> ref_token_indices;
  std::vector<std::size_t> cand_token_indices;

  std::size_t ref_count() const { return values.rows(); }
  std::size_t cand_count() const { return values.cols(); }
};

enum class MatchDirection {
  kRecall,     // reference token -> best candidate token
  kPrecision,  // candidate token -> best reference token
};

struct MatchRecord {
  MatchDirection direction = MatchDirection::kRecall;
  std::size_t source_index = 0;  // scoring-token index in its own sequence
  std::size_t target_index = 0;  // scoring-token index in the other sequence
  double score = 0.0;

  friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

struct Matching {
  double mean = 0.0;
  std::vector<MatchRecord> matches;
};

struct UnmatchedTokens {
  std::vector<std::size_t> reference;
  std::vector<std::size_t> candidate;
};

struct ScoreReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<MatchRecord> recall_matches;     // one per reference token
  std::vector<MatchRecord> precision_matches;  // one per candidate token
  std::vector<std::size_t> unmatched_reference;
  std::vector<std::size_t> unmatched_candidate;
  TokenSequence reference_tokens;
  TokenSequence candidate_tokens;
  std::string provider_id;
};

struct ScoreOptions {
  bool truncate = false;
};

// Cosine similarity; 0 when either vector has zero norm, clamped to [-1, 1].
double Cosine(std::span<const double> u, std::span<const double> v);

// Throws Error(kDimensionMismatch) or Error(kEmptyInput).
SimilarityMatrix ComputeSimilarity(const EmbeddingSequence& reference,
                                   const EmbeddingSequence& candidate);

// Row maxima; ties go to the lowest column.
Matching RecallMatching(const SimilarityMatrix& sim);
// Column maxima; ties go to the lowest row.
Matching PrecisionMatching(const SimilarityMatrix& sim);

// 2PR/(P+R), or 0 when P + R <= 0.
double F1(double precision, double recall);

UnmatchedTokens FindUnmatched(std::span<const MatchRecord> recall_matches,
                              std::span<const MatchRecord> precision_matches,
                              std::size_t ref_count, std::size_t cand_count);

// Scores two already-embedded sequences.
ScoreReport ScoreEmbeddings(const EmbeddingSequence& reference,
                            const EmbeddingSequence& candidate);

// Full pipeline: tokenize, embed, match, aggregate.
ScoreReport Score(std::string_view reference_text,
                  std::string_view candidate_text, const Vocab& vocab,
                  const EmbeddingProvider& provider,
                  const ScoreOptions& options = {});
ScoreReport Score(std::string_view reference_text,
                  std::string_view candidate_text, const Vocab& vocab,
                  const ProviderConfig& provider_config,
                  const ScoreOptions& options = {});

}  // namespace bertscore

#endif  // BERTSCORE_SCORE_H_
