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

#include "hal/num/tensor.hpp"

namespace hal::num {

enum class ConvMode {
  same,    ///< (W-1)/2 zeros on each side; W must be odd
  causal,  ///< W-1 zeros on the left only; position t never sees t' > t
};

/// 1-D convolution over time.
///   input   T x Cin
///   kernels Cout x Cin x W
///   bias    Cout (optional; pass nullptr)
/// Returns T x Cout.
template <typename T>
Tensor<T> conv1d(const Tensor<T>& input, const Tensor<T>& kernels, ConvMode mode,
                 const Tensor<T>* bias = nullptr);

/// Gradients of conv1d given the upstream gradient \p grad_out (T x Cout).
/// Any output pointer may be null; results are accumulated (+=).
template <typename T>
void conv1d_backward(const Tensor<T>& input, const Tensor<T>& kernels, ConvMode mode,
                     const Tensor<T>& grad_out, Tensor<T>* grad_input, Tensor<T>* grad_kernels,
                     Tensor<T>* grad_bias);

/// Numerically stable softmax of a rank-1 tensor. Throws on empty input.
template <typename T>
Tensor<T> softmax_row(const Tensor<T>& x);

/// -log softmax(logits)[target]. Throws if target is out of range.
template <typename T>
T cross_entropy(const Tensor<T>& logits, std::size_t target);

/// log(sum(exp(x[i]))) over \p n values, stable.
template <typename T>
T log_sum_exp(const T* x, std::size_t n);

}  // namespace hal::num
