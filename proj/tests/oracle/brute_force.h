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

// Test-only reference scorer. It deliberately shares nothing with the
// library beyond the token surfaces it is handed: vectors are re-derived
// with 128-bit arithmetic reduced mod 2^64, and every similarity is
// recomputed from scratch for every pair.

#ifndef BERTSCORE_TESTS_ORACLE_BRUTE_FORCE_H_
#define BERTSCORE_TESTS_ORACLE_BRUTE_FORCE_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using u128 = unsigned __int128;

inline u128 Mod64(u128 x) { return x & ((u128{1} << 64) - 1); }

inline std::vector<double> HashVector(const std::string& surface,
                                      std::size_t position, int dim,
                                      uint64_t seed, bool contextual) {
  u128 h = 0xCBF29CE484222325ULL;
  for (unsigned char b : surface) {
    h ^= b;
    h = Mod64(h * u128{0x100000001B3ULL});
  }
  h ^= seed;
  if (contextual) h ^= Mod64(u128{position} * u128{0xD1B54A32D192ED03ULL});
  std::vector<double> v;
  for (int j = 0; j < dim; ++j) {
    const u128 gamma = Mod64(u128(j + 1) * u128{0x9E3779B97F4A7C15ULL});
    const u128 m = Mod64((h ^ gamma) * u128{0x2545F4914F6CDD1DULL});
    // ldexp by -64 is exact, as is the final affine step's rounding order.
    v.push_back(2.0 * std::ldexp(static_cast<double>(static_cast<uint64_t>(m)),
                                 -64) -
                1.0);
  }
  return v;
}

inline double NaiveCosine(const std::vector<double>& u,
                          const std::vector<double>& v) {
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) return 0.0;
  return std::clamp(dot / std::sqrt(uu * vv), -1.0, 1.0);
}

struct Report {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<std::size_t> recall_targets;
  std::vector<double> recall_scores;
  std::vector<std::size_t> precision_targets;
  std::vector<double> precision_scores;
  std::vector<std::size_t> unmatched_reference;
  std::vector<std::size_t> unmatched_candidate;
};

// `*_surfaces` are whole token sequences including [CLS]/[SEP]; `*_special`
// flags the tokens to leave out of scoring.
inline Report BruteForce(const std::vector<std::string>& ref_surfaces,
                         const std::vector<bool>& ref_special,
                         const std::vector<std::string>& cand_surfaces,
                         const std::vector<bool>& cand_special, int dim,
                         uint64_t seed, bool contextual) {
  std::vector<std::vector<double>> x, y;
  for (std::size_t i = 0; i < ref_surfaces.size(); ++i) {
    if (!ref_special[i]) {
      x.push_back(HashVector(ref_surfaces[i], i, dim, seed, contextual));
    }
  }
  for (std::size_t j = 0; j < cand_surfaces.size(); ++j) {
    if (!cand_special[j]) {
      y.push_back(HashVector(cand_surfaces[j], j, dim, seed, contextual));
    }
  }

  Report r;
  long double recall_sum = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t best = 0;
    double best_score = NaiveCosine(x[i], y[0]);
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double s = NaiveCosine(x[i], y[j]);
      if (s > best_score) {
        best = j;
        best_score = s;
      }
    }
    r.recall_targets.push_back(best);
    r.recall_scores.push_back(best_score);
    recall_sum += best_score;
  }
  long double precision_sum = 0.0L;
  for (std::size_t j = 0; j < y.size(); ++j) {
    std::size_t best = 0;
    double best_score = NaiveCosine(x[0], y[j]);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double s = NaiveCosine(x[i], y[j]);
      if (s > best_score) {
        best = i;
        best_score = s;
      }
    }
    r.precision_targets.push_back(best);
    r.precision_scores.push_back(best_score);
    precision_sum += best_score;
  }
  r.recall = static_cast<double>(recall_sum / x.size());
  r.precision = static_cast<double>(precision_sum / y.size());
  const double denom = r.precision + r.recall;
  r.f1 = denom > 0
             ? std::clamp(2.0 * r.precision * r.recall / denom, -1.0, 1.0)
             : 0.0;

  const std::set<std::size_t> ref_hit(r.precision_targets.begin(),
                                      r.precision_targets.end());
  const std::set<std::size_t> cand_hit(r.recall_targets.begin(),
                                       r.recall_targets.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!ref_hit.count(i)) r.unmatched_reference.push_back(i);
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (!cand_hit.count(j)) r.unmatched_candidate.push_back(j);
  }
  return r;
}

}  // namespace oracle

#endif  // BERTSCORE_TESTS_ORACLE_BRUTE_FORCE_H_
