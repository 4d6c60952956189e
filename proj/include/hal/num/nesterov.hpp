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

#include "hal/num/graph.hpp"

namespace hal::num {

/// Nesterov accelerated gradient in its momentum form
///
///   v <- mu * v - lr * grad f(theta + mu * v)
///   theta <- theta + v
///
/// stored in shifted coordinates: the parameters held by the model are the
/// look-ahead point phi = theta + mu * v, so the gradient passed to step() is
/// simply the gradient at the current parameters. theta() recovers the
/// un-shifted iterate.
template <typename T>
struct NesterovState {
  std::vector<Tensor<T>> velocity;
  T lr = T{0.1};
  T momentum = T{0.99};

  NesterovState() = default;
  NesterovState(const ParamSet<T>& params, T lr, T momentum);

  /// Zeroes all velocities (fresh optimizer, same hyperparameters).
  void reset();
  void validate() const;
};

/// One update of \p params from \p grads. Throws ShapeError on mismatched
/// shapes and NumericError on a non-finite gradient; nothing is modified in
/// either case.
template <typename T>
void nesterov_step(ParamSet<T>& params, const GradStore<T>& grads, NesterovState<T>& state);

/// theta = phi - mu * v for every parameter.
template <typename T>
ParamSet<T> nesterov_theta(const ParamSet<T>& params, const NesterovState<T>& state);

extern template struct NesterovState<float>;
extern template struct NesterovState<double>;

}  // namespace hal::num
