// Copyright 2026 The Hallucinator Authors. All Rights Reserved.
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

#pragma once

#include <string>
#include <vector>

#include "hal/decode/nbest.hpp"
#include "hal/eval/align.hpp"

namespace hal::eval {

/// One test example: the true words and the real recognizer output.
struct EvalItem {
  std::string id;
  Words gold;
  Words reference;
};

struct RecallReport {
  std::size_t k = 0;
  std::size_t chunks_total = 0;
  std::size_t chunks_recalled = 0;
  std::size_t utterances_total = 0;
  std::size_t utterances_recalled = 0;
  /// Corpus word error rate of the real recognizer output.
  double reference_wer = 0.0;
  /// Corpus word error rate of each list's first hypothesis.
  double top1_wer = 0.0;

  /// Percentages, 0 when nothing is counted.
  double chunk_recall() const;
  double utterance_recall() const;
};

/// True if \p chunk, a chunk of the reference against \p gold, also appears
/// with the same gold anchor and spans among the chunks of \p hyp.
bool chunk_recalled(const ErrorChunk& chunk, const Words& gold, const std::vector<Words>& hyps);

/// Both recall metrics over the first \p k entries of each list. Chunks are
/// counted per occurrence. Throws std::invalid_argument for k == 0, a missing
/// list, or an empty gold side.
RecallReport evaluate_recall(const std::vector<EvalItem>& items, const std::vector<decode::NBestList>& lists,
                             std::size_t k);

double chunk_recall_at_k(const std::vector<EvalItem>& items, const std::vector<decode::NBestList>& lists,
                         std::size_t k);
double utterance_recall_at_k(const std::vector<EvalItem>& items, const std::vector<decode::NBestList>& lists,
                             std::size_t k);

/// "metric<TAB>value" lines in a fixed order.
std::string format_report(const RecallReport& r);
/// Aligned human-readable table.
std::string format_report_table(const RecallReport& r);

}  // namespace hal::eval
