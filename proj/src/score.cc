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

#include "bertscore/score.h"

#include <algorithm>
#include <cmath>

#include "bertscore/error.h"

namespace bertscore {
namespace {

double Norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

std::vector<std::size_t> ScoringIndices(const TokenSequence& seq) {
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!seq.tokens[i].is_special) indices.push_back(i);
  }
  return indices;
}

double CosineWithNorms(std::span<const double> u, double u_norm,
                       std::span<const double> v, double v_norm) {
  if (u_norm == 0.0 || v_norm == 0.0) return 0.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  return std::clamp(dot / (u_norm * v_norm), -1.0, 1.0);
}

double Mean(const std::vector<MatchRecord>& matches) {
  double sum = 0.0;
  for (const MatchRecord& m : matches) sum += m.score;
  return sum / static_cast<double>(matches.size());
}

}  // namespace

double Cosine(std::span<const double> u, std::span<const double> v) {
  return CosineWithNorms(u, Norm(u), v, Norm(v));
}

SimilarityMatrix ComputeSimilarity(const EmbeddingSequence& reference,
                                   const EmbeddingSequence& candidate) {
  if (reference.dim() != candidate.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "reference embeddings have dimension " +
                    std::to_string(reference.dim()) + ", candidate " +
                    std::to_string(candidate.dim()));
  }
  SimilarityMatrix sim;
  sim.ref_token_indices = ScoringIndices(reference.tokens);
  sim.cand_token_indices = ScoringIndices(candidate.tokens);
  if (sim.ref_token_indices.empty() || sim.cand_token_indices.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no scoring tokens");
  }

  const std::size_t k = sim.ref_token_indices.size();
  const std::size_t m = sim.cand_token_indices.size();
  std::vector<double> cand_norms(m);
  for (std::size_t j = 0; j < m; ++j) {
    cand_norms[j] = Norm(candidate.vectors.row(sim.cand_token_indices[j]));
  }
  sim.values = Matrix(k, m);
  for (std::size_t i = 0; i < k; ++i) {
    const auto u = reference.vectors.row(sim.ref_token_indices[i]);
    const double u_norm = Norm(u);
    for (std::size_t j = 0; j < m; ++j) {
      sim.values(i, j) = CosineWithNorms(
          u, u_norm, candidate.vectors.row(sim.cand_token_indices[j]),
          cand_norms[j]);
    }
  }
  return sim;
}

Matching RecallMatching(const SimilarityMatrix& sim) {
  const Matrix& s = sim.values;
  Matching out;
  out.matches.reserve(s.rows());
  for (std::size_t i = 0; i < s.rows(); ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < s.cols(); ++j) {
      if (s(i, j) > s(i, best)) best = j;
    }
    out.matches.push_back({MatchDirection::kRecall, i, best, s(i, best)});
  }
  out.mean = Mean(out.matches);
  return out;
}

Matching PrecisionMatching(const SimilarityMatrix& sim) {
  const Matrix& s = sim.values;
  Matching out;
  out.matches.reserve(s.cols());
  for (std::size_t j = 0; j < s.cols(); ++j) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.rows(); ++i) {
      if (s(i, j) > s(best, j)) best = i;
    }
    out.matches.push_back({MatchDirection::kPrecision, j, best, s(best, j)});
  }
  out.mean = Mean(out.matches);
  return out;
}

double F1(double precision, double recall) {
  if (!(precision + recall > 0.0)) return 0.0;
  // Opposite-sign P and R can push the quotient outside [-1, 1].
  return std::clamp(2.0 * precision * recall / (precision + recall), -1.0,
                    1.0);
}

UnmatchedTokens FindUnmatched(std::span<const MatchRecord> recall_matches,
                              std::span<const MatchRecord> precision_matches,
                              std::size_t ref_count, std::size_t cand_count) {
  std::vector<bool> ref_hit(ref_count, false);
  std::vector<bool> cand_hit(cand_count, false);
  for (const MatchRecord& m : precision_matches) ref_hit.at(m.target_index) = true;
  for (const MatchRecord& m : recall_matches) cand_hit.at(m.target_index) = true;

  UnmatchedTokens out;
  for (std::size_t i = 0; i < ref_count; ++i) {
    if (!ref_hit[i]) out.reference.push_back(i);
  }
  for (std::size_t j = 0; j < cand_count; ++j) {
    if (!cand_hit[j]) out.candidate.push_back(j);
  }
  return out;
}

ScoreReport ScoreEmbeddings(const EmbeddingSequence& reference,
                            const EmbeddingSequence& candidate) {
  const SimilarityMatrix sim = ComputeSimilarity(reference, candidate);
  Matching recall = RecallMatching(sim);
  Matching precision = PrecisionMatching(sim);
  UnmatchedTokens unmatched =
      FindUnmatched(recall.matches, precision.matches, sim.ref_count(),
                    sim.cand_count());

  ScoreReport report;
  report.precision = precision.mean;
  report.recall = recall.mean;
  report.f1 = F1(precision.mean, recall.mean);
  report.recall_matches = std::move(recall.matches);
  report.precision_matches = std::move(precision.matches);
  report.unmatched_reference = std::move(unmatched.reference);
  report.unmatched_candidate = std::move(unmatched.candidate);
  report.reference_tokens = reference.tokens;
  report.candidate_tokens = candidate.tokens;
  report.provider_id = reference.provider_id;
  return report;
}

ScoreReport Score(std::string_view reference_text,
                  std::string_view candidate_text, const Vocab& vocab,
                  const EmbeddingProvider& provider,
                  const ScoreOptions& options) {
  const TokenizeOptions tokenize_options{options.truncate};
  const TokenSequence ref = Tokenize(reference_text, vocab, tokenize_options);
  const TokenSequence cand = Tokenize(candidate_text, vocab, tokenize_options);
  return ScoreEmbeddings(provider.Embed(ref), provider.Embed(cand));
}

ScoreReport Score(std::string_view reference_text,
                  std::string_view candidate_text, const Vocab& vocab,
                  const ProviderConfig& provider_config,
                  const ScoreOptions& options) {
  return Score(reference_text, candidate_text, vocab,
               *MakeProvider(provider_config), options);
}

}  // namespace bertscore
