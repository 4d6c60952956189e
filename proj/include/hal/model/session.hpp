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

#include "hal/decode/step_model.hpp"
#include "hal/model/network.hpp"

namespace hal::model {

/// Decoder parameters repacked once per model for incremental evaluation.
/// References \p params, which must outlive it and stay unchanged.
class DecoderWeights {
 public:
  DecoderWeights(const ModelConfig& cfg, const num::ParamSet<float>& params);

  const ModelConfig& config() const noexcept { return cfg_; }
  const num::ParamSet<float>& params() const noexcept { return params_; }

 private:
  friend class DecoderSession;
  struct Layer {
    std::vector<float> taps;  // (W*d) x 2d, tap-major
    const num::Tensor<float>* conv_b;
    const num::Tensor<float>* attn_w;
    const num::Tensor<float>* attn_b;
  };
  ModelConfig cfg_;
  const num::ParamSet<float>& params_;
  std::vector<Layer> layers_;
  const num::Tensor<float>* embed_;
  const num::Tensor<float>* pos_;
  const num::Tensor<float>* dual_w_ = nullptr;
  const num::Tensor<float>* dual_b_ = nullptr;
  const num::Tensor<float>* out_w_;
  const num::Tensor<float>* out_b_;
};

/// Eval-mode decoder over a batch of prefixes for one source utterance.
///
/// Each row carries, per decoder layer, the last W-1 layer inputs, so a step
/// costs one row of work per layer regardless of prefix length. The encoder
/// runs once at construction. PAD and BOS are never emitted: their
/// log-probabilities are -infinity and the rest is renormalised.
class DecoderSession final : public decode::StepModel {
 public:
  DecoderSession(const DecoderWeights& weights, const SourceTokens& src);

  std::size_t vocab_size() const override { return w_.cfg_.tgt_vocab; }
  Token eos() const override { return text::Vocab::kEos; }
  void start(std::size_t rows) override;
  std::size_t rows() const override { return tokens_.size(); }
  void log_probs(std::vector<double>& out) override;
  void advance(std::span<const std::size_t> parents, std::span<const Token> tokens) override;

  /// Number of tokens consumed so far by every row (0 right after start).
  std::size_t step() const noexcept { return step_; }

 private:
  struct Memory {
    std::vector<float> keys, values;  // n x d
    std::size_t n = 0;
  };
  void attend(const Memory& mem, const float* q, std::size_t rows, float* ctx);

  const DecoderWeights& w_;
  Memory words_, phones_;
  std::vector<Token> tokens_;
  std::size_t step_ = 0;
  std::vector<std::vector<float>> history_;  // per layer: rows x (W-1) x d
  std::vector<std::vector<float>> pending_;  // per layer: rows x d
  bool have_pending_ = false;
  std::vector<float> scratch_;
};

}  // namespace hal::model
