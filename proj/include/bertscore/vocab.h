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

#ifndef BERTSCORE_VOCAB_H_
#define BERTSCORE_VOCAB_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bertscore {

inline constexpr std::string_view kUnkSurface = "[UNK]";
inline constexpr std::string_view kClsSurface = "[CLS]";
inline constexpr std::string_view kSepSurface = "[SEP]";

// WordPiece vocabulary. Line i of the vocab file holds the surface for id i,
// the format used by the published BERT checkpoints. Immutable once loaded.
class Vocab {
 public:
  // Throws Error(kDuplicateVocabEntry) or Error(kIncompleteVocab).
  static Vocab FromStream(std::istream& in, bool lowercase = true);
  static Vocab FromFile(const std::filesystem::path& path,
                        bool lowercase = true);
  static Vocab FromSurfaces(std::vector<std::string> surfaces,
                            bool lowercase = true);

  std::optional<int> Find(std::string_view surface) const;
  bool Contains(std::string_view surface) const {
    return Find(surface).has_value();
  }
  const std::string& Surface(int id) const { return surfaces_.at(id); }
  std::size_t size() const { return surfaces_.size(); }

  int unk_id() const { return unk_id_; }
  int cls_id() const { return cls_id_; }
  int sep_id() const { return sep_id_; }
  bool lowercase() const { return lowercase_; }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  Vocab() = default;

  std::vector<std::string> surfaces_;
  std::unordered_map<std::string, int, StringHash, std::equal_to<>> ids_;
  int unk_id_ = -1;
  int cls_id_ = -1;
  int sep_id_ = -1;
  bool lowercase_ = true;
};

}  // namespace bertscore

#endif  // BERTSCORE_VOCAB_H_
