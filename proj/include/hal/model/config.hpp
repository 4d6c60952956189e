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
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hal/num/tensor.hpp"

namespace hal::model {

enum class ModelMode { single, dual };

/// One residual convolution block: GLU over a conv producing 2*channels.
struct ConvSpec {
  std::size_t channels = 0;
  std::size_t kernel = 0;
  friend bool operator==(const ConvSpec&, const ConvSpec&) = default;
};

/// "CxK" items separated by commas, each optionally repeated with "*N",
/// e.g. "64x11*3,128x7*2,256x5".
std::vector<ConvSpec> parse_conv_stack(std::string_view text);
std::string format_conv_stack(const std::vector<ConvSpec>& stack);

struct ModelConfig {
  std::string name = "desk";
  ModelMode mode = ModelMode::single;
  std::size_t embed_dim = 64;
  /// Word encoder; in dual mode this is encoder B.
  std::vector<ConvSpec> word_encoder;
  /// Phoneme encoder (encoder A), dual mode only.
  std::vector<ConvSpec> phone_encoder;
  std::size_t dec_layers = 2;
  std::size_t dec_kernel = 3;
  std::size_t src_vocab = 0;
  std::size_t tgt_vocab = 0;
  std::size_t phone_vocab = 0;
  std::size_t max_positions = 1024;
  double dropout = 0.2;
  double encoder_dropout = 0.5;

  bool dual() const noexcept { return mode == ModelMode::dual; }

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;

  /// key=value lines in a fixed key order.
  std::string serialize() const;
  static ModelConfig parse(std::string_view text);

  /// Applies one key=value setting; throws std::invalid_argument on an
  /// unknown key or a malformed value.
  void set(std::string_view key, std::string_view value);

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Named architecture presets: "paper", "desk" and "toy". Vocabulary sizes are
/// left at zero and must be filled in from data.
ModelConfig preset(std::string_view name, ModelMode mode);
const std::vector<std::string>& preset_names();

ModelMode parse_mode(std::string_view s);
std::string_view mode_name(ModelMode m);

/// Every learnable tensor the config implies, in creation order.
std::vector<std::pair<std::string, num::Shape>> param_shapes(const ModelConfig& cfg);
std::size_t parameter_count(const ModelConfig& cfg);

}  // namespace hal::model
