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

#include "hal/model/params.hpp"

#include <cmath>
#include <stdexcept>

#include "hal/util/rng.hpp"

namespace hal::model {

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

template <typename T>
num::ParamSet<T> init_params(const ModelConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng(derive_seed(seed, 0x1a17ULL));
  num::ParamSet<T> params;
  for (const auto& [name, shape] : param_shapes(cfg)) {
    num::Tensor<T> t(shape);
    if (ends_with(name, ".embed") || ends_with(name, ".pos")) {
      for (auto& v : t.data()) v = static_cast<T>(rng.normal(0.0, 0.1));
    } else if (shape.size() >= 2) {
      const double width = shape.size() == 3 ? static_cast<double>(shape[2]) : 1.0;
      const double fan_out = static_cast<double>(shape[0]) * width;
      const double fan_in = static_cast<double>(shape[1]) * width;
      const double a = std::sqrt(6.0 / (fan_in + fan_out));
      for (auto& v : t.data()) v = static_cast<T>((2.0 * rng.uniform() - 1.0) * a);
    }
    params.add(name, std::move(t));
  }
  return params;
}

template <typename T>
num::ParamSet<T> zero_params(const ModelConfig& cfg) {
  num::ParamSet<T> params;
  for (const auto& [name, shape] : param_shapes(cfg)) params.add(name, num::Tensor<T>(shape));
  return params;
}

template <typename T>
void check_params(const ModelConfig& cfg, const num::ParamSet<T>& params) {
  const auto shapes = param_shapes(cfg);
  if (shapes.size() != params.size())
    throw std::invalid_argument("parameter set has " + std::to_string(params.size()) +
                                " tensors, config implies " + std::to_string(shapes.size()));
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    if (params.name(i) != shapes[i].first || params.value(i).shape() != shapes[i].second)
      throw std::invalid_argument("parameter " + std::to_string(i) + " is " + params.name(i) + " " +
                                  num::shape_str(params.value(i).shape()) + ", expected " +
                                  shapes[i].first + " " + num::shape_str(shapes[i].second));
  }
}

template num::ParamSet<float> init_params<float>(const ModelConfig&, std::uint64_t);
template num::ParamSet<double> init_params<double>(const ModelConfig&, std::uint64_t);
template num::ParamSet<float> zero_params<float>(const ModelConfig&);
template num::ParamSet<double> zero_params<double>(const ModelConfig&);
template void check_params<float>(const ModelConfig&, const num::ParamSet<float>&);
template void check_params<double>(const ModelConfig&, const num::ParamSet<double>&);

}  // namespace hal::model
