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

#include <cstdint>
#include <vector>

#include "hal/decode/nbest.hpp"
#include "hal/decode/step_model.hpp"

namespace hal::decode {

/// When to stop drawing once min_samples sequences exist.
enum class StopRule {
  /// Stop at min_samples if at most target_unique distinct sequences were
  /// seen; otherwise keep drawing up to max_samples.
  saturate,
  /// Stop as soon as target_unique distinct sequences exist (checked after
  /// each draw from min_samples on), or at max_samples.
  reach_unique,
};

struct SampleOptions {
  std::size_t min_samples = 250;
  std::size_t max_samples = 1000;
  std::size_t target_unique = 100;
  std::size_t max_len = 0;
  StopRule rule = StopRule::saturate;
  /// Rows decoded together; affects speed only, never the result.
  std::size_t chunk = 250;
};

struct SampleStats {
  std::size_t drawn = 0;
  std::size_t unique = 0;
};

/// Ancestral sampling: one token per step from the model's distribution,
/// until EOS or max_len tokens. Sample i uses its own Rng seeded from
/// (seed, i), so the outcome does not depend on chunking. Returns at most
/// target_unique sequences ordered by descending count, ties by first
/// occurrence; each score is the count.
std::vector<Hypothesis> sample_decode(StepModel& model, const SampleOptions& opts, std::uint64_t seed,
                                      SampleStats* stats = nullptr);

/// Draws \p n independent samples (sample i from Rng seeded with (seed, i)),
/// in draw order.
std::vector<std::vector<Token>> draw_samples(StepModel& model, std::size_t n, std::size_t max_len,
                                             std::uint64_t seed, std::size_t first_index = 0,
                                             std::size_t chunk = 250);

}  // namespace hal::decode
