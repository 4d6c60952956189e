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
#include <string_view>
#include <utility>
#include <vector>

#include "hal/model/config.hpp"
#include "hal/num/graph.hpp"
#include "hal/text/vocab.hpp"
#include "hal/util/rng.hpp"

namespace hal::model {

using text::Token;

/// Source side of one example: words always, phonemes in dual mode.
struct SourceTokens {
  std::vector<Token> words;
  std::vector<Token> phones;
};

/// Which encoder, if any, is switched off for one example.
enum class EncoderDrop { none, drop_a, drop_b };

/// One draw: A with probability p_d/2, B with probability p_d/2, else none.
/// Consumes exactly one uniform from \p rng. Throws for p_d outside [0, 1].
EncoderDrop draw_encoder_drop(double p_d, Rng& rng);

/// Multipliers applied to the attended representations of encoders A and B.
std::pair<double, double> encoder_drop_factors(EncoderDrop drop);

/// Draws a decision and scales the attended values in place.
template <typename T>
EncoderDrop encoder_dropout(num::Tensor<T>& va, num::Tensor<T>& vb, double p_d, Rng& rng);

enum class EncoderKind {
  words,   ///< encoder B in dual mode, the only encoder in single mode
  phones,  ///< encoder A
};

template <typename T>
struct EncoderOut {
  num::Var keys;
  num::Var values;
  /// true marks a padded position, which never receives attention.
  std::vector<bool> mask;
  std::size_t length = 0;
};

/// Bundles a graph with the parameters and mode of one forward pass. Without
/// an Rng the pass is in eval mode (no dropout of any kind).
template <typename T>
class Forward {
 public:
  Forward(num::Graph<T>& graph, const ModelConfig& cfg, const num::ParamSet<T>& params,
          Rng* rng = nullptr);

  num::Graph<T>& graph() { return graph_; }
  const ModelConfig& config() const { return cfg_; }
  bool training() const { return rng_ != nullptr; }
  Rng* rng() { return rng_; }

  /// Graph node for a named parameter, created on first use.
  num::Var param(std::string_view name);
  bool has_param(std::string_view name) const { return params_.find(name).has_value(); }
  /// Conventional dropout at cfg.dropout in training mode, identity otherwise.
  num::Var dropout(num::Var x);

 private:
  num::Graph<T>& graph_;
  const ModelConfig& cfg_;
  const num::ParamSet<T>& params_;
  Rng* rng_;
  std::vector<num::Var> cache_;
};

/// Embeds \p tokens (plus positions), runs the residual conv stack and returns
/// keys H and values H + E. PAD tokens are masked and their rows zeroed.
template <typename T>
EncoderOut<T> encode(Forward<T>& f, EncoderKind kind, const std::vector<Token>& tokens);

/// q = p W^T + b + g_prev; a = softmax over unmasked encoder positions of
/// q k^T; returns a v. Optionally exposes the attention weights node.
template <typename T>
num::Var attend(num::Graph<T>& g, num::Var p, num::Var g_prev, const EncoderOut<T>& enc,
                num::Var w, num::Var b, num::Var* weights = nullptr);

/// Attends to both encoders with the shared projection, scales each attended
/// value by its encoder-dropout factor and fuses [c_a | c_b] W_dual^T + b_dual.
/// A dropped encoder contributes a constant zero block.
template <typename T>
num::Var dual_attend(num::Graph<T>& g, num::Var p, num::Var g_prev, const EncoderOut<T>* enc_a,
                     const EncoderOut<T>* enc_b, num::Var w, num::Var b, num::Var w_dual,
                     num::Var b_dual, EncoderDrop drop = EncoderDrop::none);

/// Teacher-forced decoder: logits (m x V) for decoder inputs [BOS, y1, ...].
/// \p phones must be non-null in dual mode.
template <typename T>
num::Var decoder_logits(Forward<T>& f, const std::vector<Token>& inputs,
                        const EncoderOut<T>& words, const EncoderOut<T>* phones,
                        EncoderDrop drop = EncoderDrop::none);

struct LossParts {
  num::Var loss_sum;
  std::size_t tokens = 0;
};

/// Summed cross-entropy of \p target followed by EOS, teacher forced. Draws
/// the encoder-dropout decision first when training in dual mode.
template <typename T>
LossParts forward_loss_sum(Forward<T>& f, const SourceTokens& src, const std::vector<Token>& target);

/// Per-token mean loss value of one example.
template <typename T>
T forward_loss(const ModelConfig& cfg, const num::ParamSet<T>& params, const SourceTokens& src,
               const std::vector<Token>& target, Rng* rng = nullptr);

/// Eval-mode distribution over the target vocabulary after \p prev, which
/// starts with BOS.
template <typename T>
num::Tensor<T> decode_step(const ModelConfig& cfg, const num::ParamSet<T>& params,
                           const SourceTokens& src, const std::vector<Token>& prev);

/// Range and length checks shared by every entry point.
void check_source(const ModelConfig& cfg, const SourceTokens& src);

}  // namespace hal::model
