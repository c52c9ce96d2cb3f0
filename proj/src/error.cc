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

#include "bertscore/error.h"

namespace bertscore {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateVocabEntry:
      return "DUPLICATE_VOCAB_ENTRY";
    case ErrorCode::kIncompleteVocab:
      return "INCOMPLETE_VOCAB";
    case ErrorCode::kEmptyInput:
      return "EMPTY_INPUT";
    case ErrorCode::kSequenceTooLong:
      return "SEQUENCE_TOO_LONG";
    case ErrorCode::kDimensionMismatch:
      return "DIMENSION_MISMATCH";
    case ErrorCode::kProviderLoad:
      return "PROVIDER_LOAD_ERROR";
    case ErrorCode::kProviderRuntime:
      return "PROVIDER_RUNTIME_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace bertscore
