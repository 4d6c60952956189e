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

// Small models and data shared by the tests.

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hal/decode/step_model.hpp"
#include "hal/model/config.hpp"
#include "hal/num/tensor.hpp"
#include "hal/util/hash.hpp"
#include "hal/util/rng.hpp"

#ifndef HAL_TEST_DATA
#define HAL_TEST_DATA "tests/data"
#endif

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(HAL_TEST_DATA) + "/" + name; }

/// Embed 8, one encoder layer per encoder and one decoder layer, vocabularies
/// of at most 12, no dropout of any kind.
inline hal::model::ModelConfig tiny_config(hal::model::ModelMode mode) {
  hal::model::ModelConfig c;
  c.name = "tiny";
  c.mode = mode;
  c.embed_dim = 8;
  if (mode == hal::model::ModelMode::dual) {
    c.word_encoder = {{6, 3}};
    c.phone_encoder = {{4, 3}};
  } else {
    c.word_encoder = {{8, 3}};
  }
  c.dec_layers = 1;
  c.dec_kernel = 3;
  c.src_vocab = 10;
  c.tgt_vocab = 9;
  c.phone_vocab = mode == hal::model::ModelMode::dual ? 12 : 0;
  c.max_positions = 16;
  c.dropout = 0.0;
  c.encoder_dropout = 0.0;
  return c;
}

template <typename T>
hal::num::Tensor<T> random_tensor(hal::num::Shape shape, hal::Rng& rng, double scale = 1.0) {
  hal::num::Tensor<T> t(std::move(shape));
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<T>(rng.normal(0.0, scale));
  return t;
}

/// Next-token model whose distribution after each prefix is a fixed random
/// function of the prefix. Nothing is masked.
class HashedModel final : public hal::decode::StepModel {
 public:
  HashedModel(std::size_t vocab, std::size_t eos, std::uint64_t seed, double sharpness = 2.0)
      : vocab_(vocab), eos_(eos), seed_(seed), sharpness_(sharpness) {}
  std::size_t vocab_size() const override { return vocab_; }
  hal::text::Token eos() const override { return eos_; }
  void start(std::size_t rows) override { prefixes_.assign(rows, {}); }
  std::size_t rows() const override { return prefixes_.size(); }
  void log_probs(std::vector<double>& out) override {
    out.assign(prefixes_.size() * vocab_, 0.0);
    for (std::size_t r = 0; r < prefixes_.size(); ++r) {
      std::uint64_t h = seed_;
      for (auto t : prefixes_[r]) h = hal::derive_seed(h, t + 1);
      hal::Rng rng(h);
      std::vector<double> logits(vocab_);
      double mx = -INFINITY;
      for (auto& l : logits) {
        l = sharpness_ * rng.normal(0.0, 1.0);
        mx = std::max(mx, l);
      }
      double z = 0.0;
      for (double l : logits) z += std::exp(l - mx);
      for (std::size_t v = 0; v < vocab_; ++v) out[r * vocab_ + v] = logits[v] - mx - std::log(z);
    }
  }
  void advance(std::span<const std::size_t> parents, std::span<const hal::text::Token> tokens) override {
    std::vector<std::vector<hal::text::Token>> next;
    for (std::size_t i = 0; i < parents.size(); ++i) {
      next.push_back(prefixes_[parents[i]]);
      next.back().push_back(tokens[i]);
    }
    prefixes_ = std::move(next);
  }

 private:
  std::size_t vocab_;
  std::size_t eos_;
  std::uint64_t seed_;
  double sharpness_;
  std::vector<std::vector<hal::text::Token>> prefixes_;
};

}  // namespace fixtures
