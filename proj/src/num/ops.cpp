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

#include "hal/num/ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hal/num/linalg.hpp"

namespace hal::num {

namespace {

struct ConvDims {
  std::size_t steps, cin, cout, width, pad_left;
};

template <typename T>
ConvDims conv_dims(const Tensor<T>& input, const Tensor<T>& kernels, ConvMode mode) {
  if (input.rank() != 2) throw ShapeError("conv1d: input must be T x Cin, got " + shape_str(input.shape()));
  if (kernels.rank() != 3) {
    throw ShapeError("conv1d: kernels must be Cout x Cin x W, got " + shape_str(kernels.shape()));
  }
  ConvDims d{input.dim(0), input.dim(1), kernels.dim(0), kernels.dim(2), 0};
  if (kernels.dim(1) != d.cin) {
    throw ShapeError("conv1d: input channels " + std::to_string(d.cin) + " vs kernel " +
                     shape_str(kernels.shape()));
  }
  if (d.steps == 0) throw ShapeError("conv1d: empty input sequence");
  if (d.width == 0) throw ShapeError("conv1d: zero kernel width");
  if (mode == ConvMode::same) {
    if (d.width % 2 == 0) throw ShapeError("conv1d: same mode needs an odd kernel width");
    d.pad_left = (d.width - 1) / 2;
  } else {
    d.pad_left = d.width - 1;
  }
  return d;
}

// Kernel tap w as a Cin x Cout matrix: packed[w][c][o] = kernels[o][c][w].
template <typename T>
std::vector<T> pack_taps(const Tensor<T>& kernels, const ConvDims& d) {
  std::vector<T> packed(d.width * d.cin * d.cout);
  const T* k = kernels.ptr();
  for (std::size_t o = 0; o < d.cout; ++o)
    for (std::size_t c = 0; c < d.cin; ++c)
      for (std::size_t w = 0; w < d.width; ++w)
        packed[(w * d.cin + c) * d.cout + o] = k[(o * d.cin + c) * d.width + w];
  return packed;
}

// Output rows [t0, t1) read input rows [t0 + shift, t1 + shift).
struct TapRange {
  std::ptrdiff_t shift;
  std::size_t t0, t1;
};

TapRange tap_range(const ConvDims& d, std::size_t w) {
  const std::ptrdiff_t shift = static_cast<std::ptrdiff_t>(w) - static_cast<std::ptrdiff_t>(d.pad_left);
  const std::ptrdiff_t steps = static_cast<std::ptrdiff_t>(d.steps);
  const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -shift);
  const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(steps, steps - shift);
  if (hi <= lo) return {shift, 0, 0};
  return {shift, static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

}  // namespace

template <typename T>
Tensor<T> conv1d(const Tensor<T>& input, const Tensor<T>& kernels, ConvMode mode,
                 const Tensor<T>* bias) {
  const ConvDims d = conv_dims(input, kernels, mode);
  Tensor<T> out(Shape{d.steps, d.cout});
  if (bias) {
    if (bias->size() != d.cout) throw ShapeError("conv1d: bias size mismatch");
    for (std::size_t t = 0; t < d.steps; ++t) std::copy_n(bias->ptr(), d.cout, out.row(t));
  }
  const std::vector<T> packed = pack_taps(kernels, d);
  for (std::size_t w = 0; w < d.width; ++w) {
    const TapRange r = tap_range(d, w);
    if (r.t1 <= r.t0) continue;
    const std::size_t rows = r.t1 - r.t0;
    linalg::gemm<T>(false, false, rows, d.cout, d.cin, T{1},
                    input.row(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(r.t0) + r.shift)),
                    packed.data() + w * d.cin * d.cout, T{1}, out.row(r.t0));
  }
  return out;
}

template <typename T>
void conv1d_backward(const Tensor<T>& input, const Tensor<T>& kernels, ConvMode mode,
                     const Tensor<T>& grad_out, Tensor<T>* grad_input, Tensor<T>* grad_kernels,
                     Tensor<T>* grad_bias) {
  const ConvDims d = conv_dims(input, kernels, mode);
  if (grad_out.shape() != Shape{d.steps, d.cout}) throw ShapeError("conv1d_backward: grad shape");
  if (grad_bias) {
    for (std::size_t t = 0; t < d.steps; ++t) {
      const T* g = grad_out.row(t);
      for (std::size_t o = 0; o < d.cout; ++o) (*grad_bias)[o] += g[o];
    }
  }
  std::vector<T> packed;
  if (grad_input) packed = pack_taps(kernels, d);
  std::vector<T> dpacked;
  if (grad_kernels) dpacked.assign(d.width * d.cin * d.cout, T{0});
  for (std::size_t w = 0; w < d.width; ++w) {
    const TapRange r = tap_range(d, w);
    if (r.t1 <= r.t0) continue;
    const std::size_t rows = r.t1 - r.t0;
    const std::size_t src = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(r.t0) + r.shift);
    if (grad_input) {
      linalg::gemm<T>(false, true, rows, d.cin, d.cout, T{1}, grad_out.row(r.t0),
                      packed.data() + w * d.cin * d.cout, T{1}, grad_input->row(src));
    }
    if (grad_kernels) {
      linalg::gemm<T>(true, false, d.cin, d.cout, rows, T{1}, input.row(src), grad_out.row(r.t0),
                      T{1}, dpacked.data() + w * d.cin * d.cout);
    }
  }
  if (grad_kernels) {
    T* gk = grad_kernels->ptr();
    for (std::size_t o = 0; o < d.cout; ++o)
      for (std::size_t c = 0; c < d.cin; ++c)
        for (std::size_t w = 0; w < d.width; ++w)
          gk[(o * d.cin + c) * d.width + w] += dpacked[(w * d.cin + c) * d.cout + o];
  }
}

template <typename T>
T log_sum_exp(const T* x, std::size_t n) {
  T mx = -std::numeric_limits<T>::infinity();
  for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, x[i]);
  if (!std::isfinite(mx)) return mx;
  T s = 0;
  for (std::size_t i = 0; i < n; ++i) s += std::exp(x[i] - mx);
  return mx + std::log(s);
}

template <typename T>
Tensor<T> softmax_row(const Tensor<T>& x) {
  if (x.size() == 0) throw ShapeError("softmax_row: empty input");
  Tensor<T> out(Shape{x.size()});
  const T mx = *std::max_element(x.data().begin(), x.data().end());
  T sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::exp(x[i] - mx);
    sum += out[i];
  }
  for (std::size_t i = 0; i < x.size(); ++i) out[i] /= sum;
  require_finite(out, "softmax_row");
  return out;
}

template <typename T>
T cross_entropy(const Tensor<T>& logits, std::size_t target) {
  if (target >= logits.size()) {
    throw std::out_of_range("cross_entropy: target " + std::to_string(target) +
                            " outside vocabulary of " + std::to_string(logits.size()));
  }
  const T loss = log_sum_exp(logits.ptr(), logits.size()) - logits[target];
  if (!std::isfinite(loss)) throw NumericError("non-finite cross-entropy");
  return std::max(loss, T{0});
}

#define HAL_INSTANTIATE(T)                                                                  \
  template Tensor<T> conv1d(const Tensor<T>&, const Tensor<T>&, ConvMode, const Tensor<T>*); \
  template void conv1d_backward(const Tensor<T>&, const Tensor<T>&, ConvMode,                \
                                const Tensor<T>&, Tensor<T>*, Tensor<T>*, Tensor<T>*);       \
  template Tensor<T> softmax_row(const Tensor<T>&);                                          \
  template T cross_entropy(const Tensor<T>&, std::size_t);                                   \
  template T log_sum_exp(const T*, std::size_t);

HAL_INSTANTIATE(float)
HAL_INSTANTIATE(double)
#undef HAL_INSTANTIATE

}  // namespace hal::num
