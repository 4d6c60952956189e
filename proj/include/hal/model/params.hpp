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

#include "hal/model/config.hpp"
#include "hal/num/graph.hpp"

namespace hal::model {

/// Fresh parameters: Xavier-uniform weights and kernels (kernel fans are
/// channels times width), zero biases, N(0, 0.1) embeddings.
template <typename T>
num::ParamSet<T> init_params(const ModelConfig& cfg, std::uint64_t seed);

/// All-zero parameters of the right shapes.
template <typename T>
num::ParamSet<T> zero_params(const ModelConfig& cfg);

/// Throws std::invalid_argument unless \p params has exactly the names and
/// shapes of param_shapes(cfg), in order.
template <typename T>
void check_params(const ModelConfig& cfg, const num::ParamSet<T>& params);

}  // namespace hal::model
