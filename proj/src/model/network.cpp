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

#include "hal/model/network.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hal::model {

using num::Var;

EncoderDrop draw_encoder_drop(double p_d, Rng& rng) {
  if (!(p_d >= 0.0 && p_d <= 1.0)) throw std::invalid_argument("encoder dropout must be in [0, 1]");
  const double u = rng.uniform();
  if (u < 0.5 * p_d) return EncoderDrop::drop_a;
  if (u < p_d) return EncoderDrop::drop_b;
  return EncoderDrop::none;
}

std::pair<double, double> encoder_drop_factors(EncoderDrop drop) {
  switch (drop) {
    case EncoderDrop::drop_a:
      return {0.0, 2.0};
    case EncoderDrop::drop_b:
      return {2.0, 0.0};
    default:
      return {1.0, 1.0};
  }
}

template <typename T>
EncoderDrop encoder_dropout(num::Tensor<T>& va, num::Tensor<T>& vb, double p_d, Rng& rng) {
  const EncoderDrop drop = draw_encoder_drop(p_d, rng);
  if (drop == EncoderDrop::none) return drop;
  const auto [fa, fb] = encoder_drop_factors(drop);
  for (auto& v : va.data()) v = static_cast<T>(v * fa);
  for (auto& v : vb.data()) v = static_cast<T>(v * fb);
  return drop;
}

void check_source(const ModelConfig& cfg, const SourceTokens& src) {
  auto check = [&](const std::vector<Token>& seq, std::size_t vocab, const char* what) {
    if (seq.empty()) throw std::invalid_argument(std::string("empty ") + what + " sequence");
    if (seq.size() > cfg.max_positions)
      throw std::invalid_argument(std::string(what) + " sequence of length " + std::to_string(seq.size()) +
                                  " exceeds max_positions " + std::to_string(cfg.max_positions));
    for (Token t : seq)
      if (t >= vocab) throw std::out_of_range(std::string(what) + " token " + std::to_string(t) + " out of range");
  };
  check(src.words, cfg.src_vocab, "word");
  if (cfg.dual()) check(src.phones, cfg.phone_vocab, "phoneme");
}

template <typename T>
Forward<T>::Forward(num::Graph<T>& graph, const ModelConfig& cfg, const num::ParamSet<T>& params, Rng* rng)
    : graph_(graph), cfg_(cfg), params_(params), rng_(rng), cache_(params.size()) {}

template <typename T>
Var Forward<T>::param(std::string_view name) {
  const std::size_t i = params_.index(name);
  if (!cache_[i].valid()) cache_[i] = graph_.param(params_, i);
  return cache_[i];
}

template <typename T>
Var Forward<T>::dropout(Var x) {
  if (!rng_ || cfg_.dropout == 0.0) return x;
  return graph_.dropout(x, cfg_.dropout, *rng_);
}

namespace {

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

template <typename T>
EncoderOut<T> encode(Forward<T>& f, EncoderKind kind, const std::vector<Token>& tokens) {
  const ModelConfig& cfg = f.config();
  const bool phones = kind == EncoderKind::phones;
  if (phones && !cfg.dual()) throw std::invalid_argument("phoneme encoder requires dual mode");
  const std::string pre = phones ? "penc" : "wenc";
  const auto& stack = phones ? cfg.phone_encoder : cfg.word_encoder;
  const std::size_t vocab = phones ? cfg.phone_vocab : cfg.src_vocab;
  if (tokens.empty()) throw std::invalid_argument("cannot encode an empty sequence");
  if (tokens.size() > cfg.max_positions)
    throw std::invalid_argument("source length " + std::to_string(tokens.size()) + " exceeds max_positions");
  for (Token t : tokens)
    if (t >= vocab) throw std::out_of_range("source token " + std::to_string(t) + " out of range");

  auto& g = f.graph();
  EncoderOut<T> out;
  out.length = tokens.size();
  out.mask.resize(tokens.size());
  bool any_masked = false;
  std::vector<T> keep(tokens.size());
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    out.mask[j] = tokens[j] == text::Vocab::kPad;
    any_masked = any_masked || out.mask[j];
    keep[j] = out.mask[j] ? T{0} : T{1};
  }
  if (any_masked && std::all_of(out.mask.begin(), out.mask.end(), [](bool m) { return m; }))
    throw std::invalid_argument("source consists only of padding");

  Var e = g.add(g.gather_rows(f.param(pre + ".embed"), tokens),
                g.gather_rows(f.param(pre + ".pos"), iota(tokens.size())));
  if (any_masked) e = g.mul_rows(e, keep);
  Var x = e;
  if (f.has_param(pre + ".in.w")) x = g.linear(x, f.param(pre + ".in.w"), f.param(pre + ".in.b"));
  for (std::size_t i = 0; i < stack.size(); ++i) {
    const std::string n = std::to_string(i);
    if (any_masked && i > 0) x = g.mul_rows(x, keep);
    Var y = g.glu(g.conv1d(f.dropout(x), f.param(pre + ".conv" + n + ".k"), f.param(pre + ".conv" + n + ".b"),
                           num::ConvMode::same));
    Var r = x;
    if (f.has_param(pre + ".res" + n + ".w"))
      r = g.linear(x, f.param(pre + ".res" + n + ".w"), f.param(pre + ".res" + n + ".b"));
    x = g.add(r, y);
  }
  x = f.dropout(x);
  if (f.has_param(pre + ".out.w")) x = g.linear(x, f.param(pre + ".out.w"), f.param(pre + ".out.b"));
  if (any_masked) x = g.mul_rows(x, keep);
  out.keys = x;
  out.values = g.add(x, e);
  return out;
}

template <typename T>
Var attend(num::Graph<T>& g, Var p, Var g_prev, const EncoderOut<T>& enc, Var w, Var b, Var* weights) {
  Var q = g.add(g.linear(p, w, b), g_prev);
  Var scores = g.matmul(q, enc.keys, true);
  Var a = g.softmax_rows(scores, &enc.mask);
  if (weights) *weights = a;
  return g.matmul(a, enc.values);
}

template <typename T>
Var dual_attend(num::Graph<T>& g, Var p, Var g_prev, const EncoderOut<T>* enc_a, const EncoderOut<T>* enc_b,
                Var w, Var b, Var w_dual, Var b_dual, EncoderDrop drop) {
  if (!enc_a || !enc_b) throw std::invalid_argument("dual attention needs both encoders");
  const auto [fa, fb] = encoder_drop_factors(drop);
  const num::Shape shape = g.value(p).shape();
  auto branch = [&](const EncoderOut<T>& enc, double factor) {
    if (factor == 0.0) return g.constant(num::Tensor<T>(shape));
    Var c = attend(g, p, g_prev, enc, w, b);
    return factor == 1.0 ? c : g.scale(c, static_cast<T>(factor));
  };
  Var ca = branch(*enc_a, fa);
  Var cb = branch(*enc_b, fb);
  return g.linear(g.concat_cols(ca, cb), w_dual, b_dual);
}

template <typename T>
Var decoder_logits(Forward<T>& f, const std::vector<Token>& inputs, const EncoderOut<T>& words,
                   const EncoderOut<T>* phones, EncoderDrop drop) {
  const ModelConfig& cfg = f.config();
  if (inputs.empty()) throw std::invalid_argument("decoder input is empty");
  if (inputs.size() > cfg.max_positions)
    throw std::invalid_argument("target length " + std::to_string(inputs.size()) + " exceeds max_positions");
  for (Token t : inputs)
    if (t >= cfg.tgt_vocab) throw std::out_of_range("target token " + std::to_string(t) + " out of range");
  if (cfg.dual() && !phones) throw std::invalid_argument("dual model needs the phoneme encoder output");

  auto& g = f.graph();
  Var gemb = g.add(g.gather_rows(f.param("dec.embed"), inputs), g.gather_rows(f.param("dec.pos"), iota(inputs.size())));
  Var x = gemb;
  for (std::size_t l = 0; l < cfg.dec_layers; ++l) {
    const std::string n = std::to_string(l);
    Var y = g.glu(g.conv1d(f.dropout(x), f.param("dec.conv" + n + ".k"), f.param("dec.conv" + n + ".b"),
                           num::ConvMode::causal));
    Var p = g.add(x, y);
    Var w = f.param("dec.attn" + n + ".w");
    Var b = f.param("dec.attn" + n + ".b");
    Var c = cfg.dual() ? dual_attend(g, p, gemb, phones, &words, w, b, f.param("dual.w"), f.param("dual.b"), drop)
                       : attend(g, p, gemb, words, w, b);
    x = g.add(p, c);
  }
  x = f.dropout(x);
  return g.linear(x, f.param("out.w"), f.param("out.b"));
}

template <typename T>
LossParts forward_loss_sum(Forward<T>& f, const SourceTokens& src, const std::vector<Token>& target) {
  const ModelConfig& cfg = f.config();
  check_source(cfg, src);
  EncoderDrop drop = EncoderDrop::none;
  if (cfg.dual() && f.training()) drop = draw_encoder_drop(cfg.encoder_dropout, *f.rng());
  EncoderOut<T> words = encode(f, EncoderKind::words, src.words);
  EncoderOut<T> phones;
  if (cfg.dual()) phones = encode(f, EncoderKind::phones, src.phones);
  std::vector<Token> inputs;
  inputs.reserve(target.size() + 1);
  inputs.push_back(text::Vocab::kBos);
  inputs.insert(inputs.end(), target.begin(), target.end());
  std::vector<std::size_t> gold(target.begin(), target.end());
  gold.push_back(text::Vocab::kEos);
  Var logits = decoder_logits(f, inputs, words, cfg.dual() ? &phones : nullptr, drop);
  return {f.graph().cross_entropy_sum(logits, std::move(gold)), inputs.size()};
}

template <typename T>
T forward_loss(const ModelConfig& cfg, const num::ParamSet<T>& params, const SourceTokens& src,
               const std::vector<Token>& target, Rng* rng) {
  num::Graph<T> g;
  Forward<T> f(g, cfg, params, rng);
  const LossParts parts = forward_loss_sum(f, src, target);
  return g.value(parts.loss_sum).item() / static_cast<T>(parts.tokens);
}

template <typename T>
num::Tensor<T> decode_step(const ModelConfig& cfg, const num::ParamSet<T>& params, const SourceTokens& src,
                           const std::vector<Token>& prev) {
  check_source(cfg, src);
  if (prev.empty() || prev.front() != text::Vocab::kBos)
    throw std::invalid_argument("decoder prefix must start with BOS");
  num::Graph<T> g;
  Forward<T> f(g, cfg, params, nullptr);
  EncoderOut<T> words = encode(f, EncoderKind::words, src.words);
  EncoderOut<T> phones;
  if (cfg.dual()) phones = encode(f, EncoderKind::phones, src.phones);
  Var logits = decoder_logits(f, prev, words, cfg.dual() ? &phones : nullptr);
  const auto& lv = g.value(logits);
  const std::size_t v = lv.dim(1);
  num::Tensor<T> last(num::Shape{v});
  std::copy_n(lv.row(lv.dim(0) - 1), v, last.ptr());
  return num::softmax_row(last);
}

#define HAL_INSTANTIATE(T)                                                                                   \
  template EncoderDrop encoder_dropout<T>(num::Tensor<T>&, num::Tensor<T>&, double, Rng&);                \
  template class Forward<T>;                                                                                \
  template EncoderOut<T> encode<T>(Forward<T>&, EncoderKind, const std::vector<Token>&);                    \
  template Var attend<T>(num::Graph<T>&, Var, Var, const EncoderOut<T>&, Var, Var, Var*);                   \
  template Var dual_attend<T>(num::Graph<T>&, Var, Var, const EncoderOut<T>*, const EncoderOut<T>*, Var, Var, \
                              Var, Var, EncoderDrop);                                                       \
  template Var decoder_logits<T>(Forward<T>&, const std::vector<Token>&, const EncoderOut<T>&,              \
                                 const EncoderOut<T>*, EncoderDrop);                                        \
  template LossParts forward_loss_sum<T>(Forward<T>&, const SourceTokens&, const std::vector<Token>&);      \
  template T forward_loss<T>(const ModelConfig&, const num::ParamSet<T>&, const SourceTokens&,              \
                             const std::vector<Token>&, Rng*);                                              \
  template num::Tensor<T> decode_step<T>(const ModelConfig&, const num::ParamSet<T>&, const SourceTokens&,  \
                                         const std::vector<Token>&);

HAL_INSTANTIATE(float)
HAL_INSTANTIATE(double)
#undef HAL_INSTANTIATE

}  // namespace hal::model
