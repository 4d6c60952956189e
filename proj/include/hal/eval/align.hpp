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

#include <cstddef>
#include <utility>
#include <vector>

#include "hal/text/tokenize.hpp"

namespace hal::eval {

using text::Words;

/// Aligned (gold span : hypothesis span) difference left after removing a
/// longest common subsequence. Spans are maximal: the words just outside
/// them, if any, are aligned matches.
struct ErrorChunk {
  Words gold;
  Words hyp;
  std::size_t gold_start = 0;
  std::size_t hyp_start = 0;
  friend bool operator==(const ErrorChunk&, const ErrorChunk&) = default;
};

/// Matched index pairs (i, j) of one LCS of \p a and \p b, increasing in both.
/// Equal words are matched as early as possible; otherwise the word of \p a
/// is skipped whenever that does not shorten the LCS.
std::vector<std::pair<std::size_t, std::size_t>> lcs_matches(const Words& a, const Words& b);

/// Chunks in gold order; empty when the sequences are equal.
std::vector<ErrorChunk> extract_error_chunks(const Words& gold, const Words& hyp);

/// Unit-cost Levenshtein distance.
std::size_t edit_distance(const Words& a, const Words& b);

/// edit_distance / |gold|; throws std::invalid_argument for an empty gold.
double wer(const Words& gold, const Words& hyp);

}  // namespace hal::eval
