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

#include "hal/num/nesterov.hpp"

#include <cmath>
#include <stdexcept>

namespace hal::num {

template <typename T>
NesterovState<T>::NesterovState(const ParamSet<T>& params, T lr_, T momentum_)
    : lr(lr_), momentum(momentum_) {
  velocity.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) velocity.emplace_back(params.value(i).shape());
  validate();
}

template <typename T>
void NesterovState<T>::reset() {
  for (auto& v : velocity) v.fill(T{0});
}

template <typename T>
void NesterovState<T>::validate() const {
  if (!(lr >= T{0})) throw std::invalid_argument("nesterov: learning rate must be >= 0");
  if (!(momentum >= T{0} && momentum < T{1})) {
    throw std::invalid_argument("nesterov: momentum must lie in [0, 1)");
  }
}

template <typename T>
void nesterov_step(ParamSet<T>& params, const GradStore<T>& grads, NesterovState<T>& state) {
  state.validate();
  if (grads.size() != params.size() || state.velocity.size() != params.size()) {
    throw ShapeError("nesterov_step: parameter/gradient/velocity counts differ");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (grads[i].shape() != params.value(i).shape() ||
        state.velocity[i].shape() != params.value(i).shape()) {
      throw ShapeError("nesterov_step: shape mismatch for '" + params.name(i) + "'");
    }
    if (!grads[i].all_finite()) {
      throw NumericError("nesterov_step: non-finite gradient for '" + params.name(i) + "'");
    }
  }
  const T mu = state.momentum;
  const T lr = state.lr;
  for (std::size_t i = 0; i < params.size(); ++i) {
    T* p = params.value(i).ptr();
    T* v = state.velocity[i].ptr();
    const T* g = grads[i].ptr();
    for (std::size_t j = 0, n = params.value(i).size(); j < n; ++j) {
      const T v_old = v[j];
      const T v_new = mu * v_old - lr * g[j];
      v[j] = v_new;
      p[j] += -mu * v_old + (T{1} + mu) * v_new;
    }
  }
}

template <typename T>
ParamSet<T> nesterov_theta(const ParamSet<T>& params, const NesterovState<T>& state) {
  ParamSet<T> out = params;
  for (std::size_t i = 0; i < out.size(); ++i) {
    T* p = out.value(i).ptr();
    const T* v = state.velocity.at(i).ptr();
    for (std::size_t j = 0; j < out.value(i).size(); ++j) p[j] -= state.momentum * v[j];
  }
  return out;
}

template struct NesterovState<float>;
template struct NesterovState<double>;
template void nesterov_step(ParamSet<float>&, const GradStore<float>&, NesterovState<float>&);
template void nesterov_step(ParamSet<double>&, const GradStore<double>&, NesterovState<double>&);
template ParamSet<float> nesterov_theta(const ParamSet<float>&, const NesterovState<float>&);
template ParamSet<double> nesterov_theta(const ParamSet<double>&, const NesterovState<double>&);

}  // namespace hal::num
