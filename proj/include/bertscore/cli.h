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

#ifndef BERTSCORE_CLI_H_
#define BERTSCORE_CLI_H_

#include <iosfwd>

namespace bertscore {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 2;
inline constexpr int kExitUsage = 64;

// Entry point of the `bertscore` tool. Exactly one mode per invocation:
//
//   --reference TEXT --candidate TEXT   score one pair
//   --ref-file PATH --cand-file PATH    score line-aligned files, then print
//                                       the corpus mean
//   --serve HOST:PORT                   run the HTTP service until SIGINT
//
// Serve mode blocks SIGINT/SIGTERM on the calling thread and waits for them
// with sigwait.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace bertscore

#endif  // BERTSCORE_CLI_H_
