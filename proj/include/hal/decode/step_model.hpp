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
#include <span>
#include <vector>

#include "hal/text/vocab.hpp"

namespace hal::decode {

using text::Token;

/// Left-to-right next-token model over a batch of prefixes ("rows").
///
/// After start(rows) every row holds the empty prefix. log_probs() fills a
/// rows x vocab_size() row-major matrix of next-token log-probabilities;
/// -infinity marks a token that can never be emitted. advance() replaces the
/// batch: new row r is old row parents[r] extended by tokens[r].
class StepModel {
 public:
  virtual ~StepModel() = default;
  virtual std::size_t vocab_size() const = 0;
  virtual Token eos() const = 0;
  virtual void start(std::size_t rows) = 0;
  virtual std::size_t rows() const = 0;
  virtual void log_probs(std::vector<double>& out) = 0;
  virtual void advance(std::span<const std::size_t> parents, std::span<const Token> tokens) = 0;
};

}  // namespace hal::decode
