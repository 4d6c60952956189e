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

#include <vector>

#include "hal/decode/nbest.hpp"
#include "hal/decode/step_model.hpp"

namespace hal::decode {

struct BeamOptions {
  std::size_t beam = 256;
  std::size_t k = 100;
  /// Hard cap on emitted tokens; a hypothesis still running after max_len
  /// tokens is completed as is.
  std::size_t max_len = 0;
};

/// max_len for a source of \p source_length tokens: 2n + 5.
std::size_t default_max_len(std::size_t source_length);

/// Beam search keeping the \p beam best running prefixes by cumulative
/// log-probability. Candidates ending in EOS leave the beam for the completed
/// pool, and the search continues with the rest. Completed hypotheses are
/// ranked by log-probability divided by length (EOS included, forced ones
/// counted at max_len), ties broken by lexicographic token order, and the top
/// k returned. Throws std::invalid_argument unless 1 <= k <= beam and
/// max_len >= 1.
std::vector<Hypothesis> beam_search(StepModel& model, const BeamOptions& opts);

}  // namespace hal::decode
