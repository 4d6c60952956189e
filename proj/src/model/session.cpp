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

#include "hal/model/session.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hal/model/params.hpp"
#include "hal/num/linalg.hpp"

namespace hal::model {

namespace {

using num::linalg::gemm;

void add_bias(float* m, std::size_t rows, std::size_t cols, const float* b) {
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m[r * cols + c] += b[c];
}

}  // namespace

DecoderWeights::DecoderWeights(const ModelConfig& cfg, const num::ParamSet<float>& params)
    : cfg_(cfg), params_(params) {
  cfg.validate();
  check_params(cfg, params);
  const std::size_t d = cfg.embed_dim, width = cfg.dec_kernel;
  for (std::size_t l = 0; l < cfg.dec_layers; ++l) {
    const std::string n = std::to_string(l);
    const auto& k = params["dec.conv" + n + ".k"];
    Layer layer;
    layer.taps.resize(width * d * 2 * d);
    for (std::size_t o = 0; o < 2 * d; ++o)
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t w = 0; w < width; ++w)
          layer.taps[(w * d + c) * 2 * d + o] = k[(o * d + c) * width + w];
    layer.conv_b = &params["dec.conv" + n + ".b"];
    layer.attn_w = &params["dec.attn" + n + ".w"];
    layer.attn_b = &params["dec.attn" + n + ".b"];
    layers_.push_back(std::move(layer));
  }
  embed_ = &params["dec.embed"];
  pos_ = &params["dec.pos"];
  if (cfg.dual()) {
    dual_w_ = &params["dual.w"];
    dual_b_ = &params["dual.b"];
  }
  out_w_ = &params["out.w"];
  out_b_ = &params["out.b"];
}

DecoderSession::DecoderSession(const DecoderWeights& weights, const SourceTokens& src) : w_(weights) {
  const ModelConfig& cfg = w_.cfg_;
  check_source(cfg, src);
  num::Graph<float> g;
  Forward<float> f(g, cfg, w_.params_, nullptr);
  auto grab = [&](EncoderKind kind, const std::vector<Token>& toks, Memory& mem) {
    EncoderOut<float> enc = encode(f, kind, toks);
    if (std::any_of(enc.mask.begin(), enc.mask.end(), [](bool m) { return m; }))
      throw std::invalid_argument("decoder session source must not contain padding");
    const auto& k = g.value(enc.keys);
    const auto& v = g.value(enc.values);
    mem.keys.assign(k.data().begin(), k.data().end());
    mem.values.assign(v.data().begin(), v.data().end());
    mem.n = enc.length;
  };
  grab(EncoderKind::words, src.words, words_);
  if (cfg.dual()) grab(EncoderKind::phones, src.phones, phones_);
  start(1);
}

void DecoderSession::start(std::size_t rows) {
  const std::size_t d = w_.cfg_.embed_dim, taps = w_.cfg_.dec_kernel - 1;
  tokens_.assign(rows, text::Vocab::kBos);
  step_ = 0;
  history_.assign(w_.cfg_.dec_layers, std::vector<float>(rows * taps * d, 0.0f));
  pending_.assign(w_.cfg_.dec_layers, std::vector<float>(rows * d, 0.0f));
  have_pending_ = false;
}

void DecoderSession::attend(const Memory& mem, const float* q, std::size_t rows, float* ctx) {
  const std::size_t d = w_.cfg_.embed_dim, n = mem.n;
  scratch_.resize(rows * n);
  gemm<float>(false, true, rows, n, d, 1.0f, q, mem.keys.data(), 0.0f, scratch_.data());
  for (std::size_t r = 0; r < rows; ++r) {
    float* s = scratch_.data() + r * n;
    const float mx = *std::max_element(s, s + n);
    float z = 0.0f;
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = std::exp(s[j] - mx);
      z += s[j];
    }
    for (std::size_t j = 0; j < n; ++j) s[j] /= z;
  }
  gemm<float>(false, false, rows, d, n, 1.0f, scratch_.data(), mem.values.data(), 0.0f, ctx);
}

void DecoderSession::log_probs(std::vector<double>& out) {
  const ModelConfig& cfg = w_.cfg_;
  const std::size_t rows = tokens_.size(), d = cfg.embed_dim, width = cfg.dec_kernel, taps = width - 1;
  const std::size_t vocab = cfg.tgt_vocab;
  if (step_ >= cfg.max_positions)
    throw std::invalid_argument("decoder step " + std::to_string(step_) + " exceeds max_positions");

  std::vector<float> gemb(rows * d);
  for (std::size_t r = 0; r < rows; ++r) {
    const float* e = w_.embed_->row(tokens_[r]);
    const float* p = w_.pos_->row(step_);
    for (std::size_t c = 0; c < d; ++c) gemb[r * d + c] = e[c] + p[c];
  }
  std::vector<float> x = gemb, window(rows * width * d), conv(rows * 2 * d), p(rows * d), q(rows * d),
                     ctx(rows * d), both;
  if (cfg.dual()) both.resize(rows * 2 * d);
  for (std::size_t l = 0; l < cfg.dec_layers; ++l) {
    const auto& layer = w_.layers_[l];
    pending_[l] = x;
    for (std::size_t r = 0; r < rows; ++r) {
      float* win = window.data() + r * width * d;
      std::copy_n(history_[l].data() + r * taps * d, taps * d, win);
      std::copy_n(x.data() + r * d, d, win + taps * d);
    }
    gemm<float>(false, false, rows, 2 * d, width * d, 1.0f, window.data(), layer.taps.data(), 0.0f, conv.data());
    add_bias(conv.data(), rows, 2 * d, layer.conv_b->ptr());
    for (std::size_t r = 0; r < rows; ++r) {
      const float* cr = conv.data() + r * 2 * d;
      for (std::size_t c = 0; c < d; ++c) {
        const float gate = 1.0f / (1.0f + std::exp(-cr[d + c]));
        p[r * d + c] = x[r * d + c] + cr[c] * gate;
      }
    }
    gemm<float>(false, true, rows, d, d, 1.0f, p.data(), layer.attn_w->ptr(), 0.0f, q.data());
    add_bias(q.data(), rows, d, layer.attn_b->ptr());
    for (std::size_t i = 0; i < rows * d; ++i) q[i] += gemb[i];
    if (cfg.dual()) {
      attend(phones_, q.data(), rows, ctx.data());
      for (std::size_t r = 0; r < rows; ++r) std::copy_n(ctx.data() + r * d, d, both.data() + r * 2 * d);
      attend(words_, q.data(), rows, ctx.data());
      for (std::size_t r = 0; r < rows; ++r) std::copy_n(ctx.data() + r * d, d, both.data() + r * 2 * d + d);
      gemm<float>(false, true, rows, d, 2 * d, 1.0f, both.data(), w_.dual_w_->ptr(), 0.0f, ctx.data());
      add_bias(ctx.data(), rows, d, w_.dual_b_->ptr());
    } else {
      attend(words_, q.data(), rows, ctx.data());
    }
    for (std::size_t i = 0; i < rows * d; ++i) x[i] = p[i] + ctx[i];
  }
  std::vector<float> logits(rows * vocab);
  gemm<float>(false, true, rows, vocab, d, 1.0f, x.data(), w_.out_w_->ptr(), 0.0f, logits.data());
  add_bias(logits.data(), rows, vocab, w_.out_b_->ptr());

  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  out.resize(rows * vocab);
  for (std::size_t r = 0; r < rows; ++r) {
    const float* lr = logits.data() + r * vocab;
    double mx = kNegInf;
    for (std::size_t v = 0; v < vocab; ++v) {
      if (v == text::Vocab::kPad || v == text::Vocab::kBos) continue;
      mx = std::max(mx, static_cast<double>(lr[v]));
    }
    double z = 0.0;
    for (std::size_t v = 0; v < vocab; ++v) {
      if (v == text::Vocab::kPad || v == text::Vocab::kBos) continue;
      z += std::exp(static_cast<double>(lr[v]) - mx);
    }
    const double lse = mx + std::log(z);
    double* o = out.data() + r * vocab;
    for (std::size_t v = 0; v < vocab; ++v) {
      o[v] = (v == text::Vocab::kPad || v == text::Vocab::kBos) ? kNegInf : static_cast<double>(lr[v]) - lse;
    }
    if (!std::isfinite(lse)) throw num::NumericError("decoder produced non-finite logits");
  }
  have_pending_ = true;
}

void DecoderSession::advance(std::span<const std::size_t> parents, std::span<const Token> tokens) {
  if (!have_pending_) throw std::logic_error("advance() called before log_probs()");
  if (parents.size() != tokens.size()) throw std::invalid_argument("advance: parents and tokens differ in length");
  const std::size_t rows = parents.size(), old_rows = tokens_.size();
  const std::size_t d = w_.cfg_.embed_dim, taps = w_.cfg_.dec_kernel - 1;
  for (std::size_t r = 0; r < rows; ++r) {
    if (parents[r] >= old_rows) throw std::out_of_range("advance: parent row out of range");
    if (tokens[r] >= w_.cfg_.tgt_vocab) throw std::out_of_range("advance: token out of range");
  }
  for (std::size_t l = 0; l < history_.size(); ++l) {
    std::vector<float> next(rows * taps * d);
    if (taps > 0) {
      for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t src = parents[r];
        float* dst = next.data() + r * taps * d;
        std::copy_n(history_[l].data() + src * taps * d + d, (taps - 1) * d, dst);
        std::copy_n(pending_[l].data() + src * d, d, dst + (taps - 1) * d);
      }
    }
    history_[l] = std::move(next);
    pending_[l].assign(rows * d, 0.0f);
  }
  tokens_.assign(tokens.begin(), tokens.end());
  ++step_;
  have_pending_ = false;
}

}  // namespace hal::model
