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

#include <fstream>
#include <istream>
#include <utility>

#include "bertscore/error.h"

namespace bertscore {

Vocab Vocab::FromStream(std::istream& in, bool lowercase) {
  std::vector<std::string> surfaces;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    surfaces.push_back(std::move(line));
  }
  return FromSurfaces(std::move(surfaces), lowercase);
}

Vocab Vocab::FromFile(const std::filesystem::path& path, bool lowercase) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIncompleteVocab,
                "cannot open vocab file " + path.string());
  }
  return FromStream(in, lowercase);
}

Vocab Vocab::FromSurfaces(std::vector<std::string> surfaces, bool lowercase) {
  Vocab vocab;
  vocab.lowercase_ = lowercase;
  vocab.ids_.reserve(surfaces.size());
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    auto [it, inserted] =
        vocab.ids_.emplace(surfaces[i], static_cast<int>(i));
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateVocabEntry,
                  "duplicate vocab entry '" + surfaces[i] + "' at lines " +
                      std::to_string(it->second) + " and " +
                      std::to_string(i));
    }
  }
  vocab.surfaces_ = std::move(surfaces);

  auto require = [&vocab](std::string_view surface) {
    auto id = vocab.Find(surface);
    if (!id) {
      throw Error(ErrorCode::kIncompleteVocab,
                  "vocab is missing " + std::string(surface));
    }
    return *id;
  };
  vocab.unk_id_ = require(kUnkSurface);
  vocab.cls_id_ = require(kClsSurface);
  vocab.sep_id_ = require(kSepSurface);
  return vocab;
}

std::optional<int> Vocab::Find(std::string_view surface) const {
  auto it = ids_.find(surface);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

}  // namespace bertscore
