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

// Sample usage:
//   bertscore --vocab vocab.txt --format tsv
//       --reference "the cat sat" --candidate "a cat sat"
//   bertscore --vocab vocab.txt --ref-file refs.txt --cand-file hyps.txt
//   bertscore --provider model --model ./bert-base-uncased --serve :8080

#include <iostream>

#include "bertscore/cli.h"

int main(int argc, char** argv) {
  return bertscore::RunCli(argc, argv, std::cout, std::cerr);
}
