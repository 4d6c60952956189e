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

#include "hal/num/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hal/num/linalg.hpp"
#include "hal/util/rng.hpp"

namespace hal::num {

// ---------------------------------------------------------------- ParamSet

template <typename T>
std::size_t ParamSet<T>::add(std::string name, Tensor<T> value) {
  if (index_.count(name)) throw std::invalid_argument("duplicate parameter '" + name + "'");
  index_.emplace(name, values_.size());
  names_.push_back(std::move(name));
  values_.push_back(std::move(value));
  return values_.size() - 1;
}

template <typename T>
std::optional<std::size_t> ParamSet<T>::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

template <typename T>
std::size_t ParamSet<T>::index(std::string_view name) const {
  auto found = find(name);
  if (!found) throw std::out_of_range("no parameter named '" + std::string(name) + "'");
  return *found;
}

template <typename T>
std::size_t ParamSet<T>::element_count() const {
  std::size_t n = 0;
  for (const auto& v : values_) n += v.size();
  return n;
}

// --------------------------------------------------------------- GradStore

template <typename T>
GradStore<T>::GradStore(const ParamSet<T>& params) {
  grads_.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) grads_.emplace_back(params.value(i).shape());
}

template <typename T>
void GradStore<T>::zero() {
  for (auto& g : grads_) g.fill(T{0});
}

template <typename T>
void GradStore<T>::scale(T factor) {
  for (auto& g : grads_)
    for (auto& v : g.data()) v *= factor;
}

template <typename T>
double GradStore<T>::norm() const {
  double s = 0.0;
  for (const auto& g : grads_)
    for (T v : g.data()) s += static_cast<double>(v) * static_cast<double>(v);
  return std::sqrt(s);
}

template <typename T>
bool GradStore<T>::all_finite() const {
  return std::all_of(grads_.begin(), grads_.end(), [](const Tensor<T>& g) { return g.all_finite(); });
}

// ------------------------------------------------------------------- Graph

template <typename T>
typename Graph<T>::Node& Graph<T>::node(Var v) {
  if (v.id >= nodes_.size()) throw std::out_of_range("invalid graph variable");
  return nodes_[v.id];
}

template <typename T>
const typename Graph<T>::Node& Graph<T>::node(Var v) const {
  if (v.id >= nodes_.size()) throw std::out_of_range("invalid graph variable");
  return nodes_[v.id];
}

template <typename T>
void Graph<T>::ensure_open() const {
  if (spent_) throw std::logic_error("graph already consumed by backward(); run a new forward pass");
}

template <typename T>
Var Graph<T>::push(Tensor<T> value, bool needs_grad, const char* op) {
  ensure_open();
  require_finite(value, op);
  Node& n = nodes_.emplace_back();
  n.owned = std::move(value);
  n.value = &n.owned;
  n.needs_grad = needs_grad;
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

template <typename T>
Tensor<T>& Graph<T>::grad_buffer(std::uint32_t id) {
  Node& n = nodes_[id];
  if (!n.has_grad) {
    n.grad = Tensor<T>(n.value->shape());
    n.has_grad = true;
  }
  return n.grad;
}

template <typename T>
Var Graph<T>::constant(Tensor<T> value) {
  return push(std::move(value), false, "constant");
}

template <typename T>
Var Graph<T>::variable(Tensor<T> value) {
  return push(std::move(value), true, "variable");
}

template <typename T>
Var Graph<T>::param(const ParamSet<T>& params, std::size_t index) {
  ensure_open();
  const Tensor<T>& v = params.value(index);
  require_finite(v, "param");
  Node& n = nodes_.emplace_back();
  n.value = &v;
  n.needs_grad = true;
  n.param_index = static_cast<std::ptrdiff_t>(index);
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

template <typename T>
const Tensor<T>& Graph<T>::value(Var v) const {
  return *node(v).value;
}

template <typename T>
const Tensor<T>& Graph<T>::grad(Var v) {
  node(v);
  return grad_buffer(v.id);
}

namespace {

template <typename T>
void require_rank2(const Tensor<T>& t, const char* op) {
  if (t.rank() != 2) throw ShapeError(std::string(op) + ": expected a matrix, got " + shape_str(t.shape()));
}

template <typename T>
void axpy(Tensor<T>& dst, const Tensor<T>& src, T alpha = T{1}) {
  T* d = dst.ptr();
  const T* s = src.ptr();
  for (std::size_t i = 0; i < dst.size(); ++i) d[i] += alpha * s[i];
}

template <typename T>
T sigmoid(T x) {
  return x >= 0 ? T{1} / (T{1} + std::exp(-x)) : std::exp(x) / (T{1} + std::exp(x));
}

}  // namespace

template <typename T>
Var Graph<T>::add(Var a, Var b) {
  const Tensor<T>& av = value(a);
  const Tensor<T>& bv = value(b);
  if (av.shape() != bv.shape()) {
    throw ShapeError("add: " + shape_str(av.shape()) + " vs " + shape_str(bv.shape()));
  }
  Tensor<T> out = av;
  axpy(out, bv);
  const bool ng = node(a).needs_grad || node(b).needs_grad;
  Var o = push(std::move(out), ng, "add");
  if (ng) {
    node(o).backward = [this, a, b, o] {
      const Tensor<T>& g = nodes_[o.id].grad;
      if (nodes_[a.id].needs_grad) axpy(grad_buffer(a.id), g);
      if (nodes_[b.id].needs_grad) axpy(grad_buffer(b.id), g);
    };
  }
  return o;
}

template <typename T>
Var Graph<T>::scale(Var a, T factor) {
  Tensor<T> out = value(a);
  for (auto& v : out.data()) v *= factor;
  const bool ng = node(a).needs_grad;
  Var o = push(std::move(out), ng, "scale");
  if (ng) {
    node(o).backward = [this, a, o, factor] { axpy(grad_buffer(a.id), nodes_[o.id].grad, factor); };
  }
  return o;
}

template <typename T>
Var Graph<T>::mul(Var a, Var b) {
  const Tensor<T>& av = value(a);
  const Tensor<T>& bv = value(b);
  if (av.shape() != bv.shape()) {
    throw ShapeError("mul: " + shape_str(av.shape()) + " vs " + shape_str(bv.shape()));
  }
  Tensor<T> out = av;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= bv[i];
  const bool ng = node(a).needs_grad || node(b).needs_grad;
  Var o = push(std::move(out), ng, "mul");
  if (ng) {
    node(o).backward = [this, a, b, o] {
      const Tensor<T>& g = nodes_[o.id].grad;
      const Tensor<T>& av = *nodes_[a.id].value;
      const Tensor<T>& bv = *nodes_[b.id].value;
      if (nodes_[a.id].needs_grad) {
        Tensor<T>& ga = grad_buffer(a.id);
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * bv[i];
      }
      if (nodes_[b.id].needs_grad) {
        Tensor<T>& gb = grad_buffer(b.id);
        for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * av[i];
      }
    };
  }
  return o;
}

template <typename T>
Var Graph<T>::mul_rows(Var x, std::vector<T> factors) {
  const Tensor<T>& xv = value(x);
  require_rank2(xv, "mul_rows");
  if (factors.size() != xv.dim(0)) throw ShapeError("mul_rows: factor count mismatch");
  Tensor<T> out = xv;
  const std::size_t cols = xv.dim(1);
  for (std::size_t r = 0; r < factors.size(); ++r) {
    T* row = out.row(r);
    for (std::size_t c = 0; c < cols; ++c) row[c] *= factors[r];
  }
  const bool ng = node(x).needs_grad;
  Var o = push(std::move(out), ng, "mul_rows");
  if (ng) {
    node(o).backward = [this, x, o, factors = std::move(factors), cols] {
      const Tensor<T>& g = nodes_[o.id].grad;
      Tensor<T>& gx = grad_buffer(x.id);
      for (std::size_t r = 0; r < factors.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) gx.at(r, c) += factors[r] * g.at(r, c);
    };
  }
  return o;
}

template <typename T>
Var Graph<T>::matmul(Var a, Var b, bool trans_b) {
  const Tensor<T>& av = value(a);
  const Tensor<T>& bv = value(b);
  require_rank2(av, "matmul");
  require_rank2(bv, "matmul");
  const std::size_t m = av.dim(0), k = av.dim(1);
  const std::size_t n = trans_b ? bv.dim(0) : bv.dim(1);
  if ((trans_b ? bv.dim(1) : bv.dim(0)) != k) {
    throw ShapeError("matmul: " + shape_str(av.shape()) + " x " + shape_str(bv.shape()) +
                     (trans_b ? "^T" : ""));
  }
  Tensor<T> out(Shape{m, n});
  linalg::gemm<T>(false, trans_b, m, n, k, T{1}, av.ptr(), bv.ptr(), T{0}, out.ptr());
  const bool ng = node(a).needs_grad || node(b).needs_grad;
  Var o = push(std::move(out), ng, "matmul");
  if (ng) {
    node(o).backward = [this, a, b, o, m, n, k, trans_b] {
      const Tensor<T>& g = nodes_[o.id].grad;
      const Tensor<T>& av = *nodes_[a.id].value;
      const Tensor<T>& bv = *nodes_[b.id].value;
      if (nodes_[a.id].needs_grad) {
        // dA = G op(B)^T
        linalg::gemm<T>(false, !trans_b, m, k, n, T{1}, g.ptr(), bv.ptr(), T{1},
                        grad_buffer(a.id).ptr());
      }
      if (nodes_[b.id].needs_grad) {
        if (trans_b) {
          // B is n x k: dB = G^T A
          linalg::gemm<T>(true, false, n, k, m, T{1}, g.ptr(), av.ptr(), T{1},
                          grad_buffer(b.id).ptr());
        } else {
          // dB = A^T G
          linalg::gemm<T>(true, false, k, n, m, T{1}, av.ptr(), g.ptr(), T{1},
                          grad_buffer(b.id).ptr());
        }
      }
    };
  }
  return o;
}

template <typename T>
Var Graph<T>::linear(Var x, Var weight, Var bias) {
  const Tensor<T>& xv = value(x);
  const Tensor<T>& wv = value(weight);
  require_rank2(xv, "linear");
  require_rank2(wv, "linear");
  const std::size_t rows = xv.dim(0), in = xv.dim(1), out_dim = wv.dim(0);
  if (wv.dim(1) != in) {
    throw ShapeError("linear: input " + shape_str(xv.shape()) + " vs weight " + shape_str(wv.shape()));
  }
  Tensor<T> out(Shape{rows, out_dim});
  if (bias.valid()) {
    const Tensor<T>& bv = value(bias);
    if (bv.size() != out_dim) throw ShapeError("linear: bias size mismatch");
    for (std::size_t r = 0; r < rows; ++r) std::copy_n(bv.ptr(), out_dim, out.row(r));
  }
  linalg::gemm<T>(false, true, rows, out_dim, in, T{1}, xv.ptr(), wv.ptr(), T{1}, out.ptr());
  const bool ng = node(x).needs_grad || node(weight).needs_grad ||
                  (bias.valid() && node(bias).needs_grad);
  Var o = push(std::move(out), ng, "linear");
  if (ng) {
    node(o).backward = [this, x, weight, bias, o, rows, in, out_dim] {
      const Tensor<T>& g = nodes_[o.id].grad;
      if (nodes_[x.id].needs_grad) {
        linalg::gemm<T>(false, false, rows, in, out_dim, T{1}, g.ptr(), nodes_[weight.id].value->ptr(),
                        T{1}, grad_buffer(x.id).ptr());
      }
      if (nodes_[weight.id].needs_grad) {
        linalg::gemm<T>(true, false, out_dim, in, rows, T{1}, g.ptr(), nodes_[x.id].value->ptr(),
                        T{1}, grad_buffer(weight.id).ptr());
      }
      if (bias.valid() && nodes_[bias.id].needs_grad) {
        Tensor<T>& gb = grad_buffer(bias.id);
        for (std::size_t r = 0; r < rows; ++r) {
          const T* gr = g.row(r);
          for (std::size_t c = 0; c < out_dim; ++c) gb[c] += gr[c];
        }
      }
    };
  }
  return o;
}

template <typename T>
Var Graph<T>::conv1d(Var x, Var kernels, Var bias, ConvMode mode) {
  const Tensor<T>* bv = bias.valid() ? &value(bias) : nullptr;
  Tensor<T> out = num::conv1d(value(x), value(kernels), mode, bv);
  const bool ng = node(x).needs_grad || node(kernels).needs_grad ||
                  (bias.valid() && node(bias).needs_grad);
  Var o = push(std::move(out), ng, "conv1d");
  if (ng) {
    node(o).backward = [this, x, kernels, bias, o, mode] {
      Tensor<T>* gx = nodes_[x.id].needs_grad ? &grad_buffer(x.id) : nullptr;
      Tensor<T>* gk = nodes_[kernels.id].needs_grad ? &grad_buffer(kernels.id) : nullptr;
      Tensor<T>* gb = (bias.valid() && nodes_[bias.id].needs_grad) ? &grad_buffer(bias.id) : nullptr;
      num::conv1d_backward(*nodes_[x.id].value, *nodes_[kernels.id].value, mode, nodes_[o.id].grad,
                           gx, gk, gb);
    };
  }
  return o;
}

template <typename T>
Var Graph<T>::glu(Var x) {
  const Tensor<T>& xv = value(x);
  require_rank2(xv, "glu");
  if (xv.dim(1) % 2 != 0) throw ShapeError("glu: channel count must be even");
  const std::size_t rows = xv.dim(0), half = xv.dim(1) / 2;
  Tensor<T> out(Shape{rows, half});
  Tensor<T> gate(Shape{rows, half});
  for (std::size_t r = 0; r < rows; ++r) {
    const T* in = xv.row(r);
    for (std::size_t c = 0; c < half; ++c) {
      gate.at(r, c) = sigmoid(in[half + c]);
      out.at(r, c) = in[c] * gate.at(r, c);
    }
  }
  const bool ng = node(x).needs_grad;
  Var o = push(std::move(out), ng, "glu");
  if (ng) {
    node(o).backward = [this, x, o, rows, half, gate = std::move(gate)] {
      const Tensor<T>& g = nodes_[o.id].grad;
      const Tensor<T>& xv = *nodes_[x.id].value;
      Tensor<T>& gx = grad_buffer(x.id);
      for (std::size_t r = 0; r < rows; ++r) {
        const T* in = xv.row(r);
        T* d = gx.row(r);
        for (std::size_t c = 0; c < half; ++c) {
          const T s = gate.at(r, c);
          d[c] += g.at(r, c) * s;
          d[half + c] += g.at(r, c) * in[c] * s * (T{1} - s);
        }
      }
    };
  }
  return o;
}

template <typename T>
Var Graph<T>::tanh(Var x) {
  Tensor<T> out = value(x);
  for (auto& v : out.data()) v = std::tanh(v);
  const bool ng = node(x).needs_grad;
  Var o = push(std::move(out), ng, "tanh");
  if (ng) {
    node(o).backward = [this, x, o] {
      const Tensor<T>& g = nodes_[o.id].grad;
      const Tensor<T>& y = *nodes_[o.id].value;
      Tensor<T>& gx = grad_buffer(x.id);
      for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i] * (T{1} - y[i] * y[i]);
    };
  }
  return o;
}

template <typename T>
Var Graph<T>::gather_rows(Var table, std::vector<std::size_t> indices) {
  const Tensor<T>& tv = value(table);
  require_rank2(tv, "gather_rows");
  const std::size_t cols = tv.dim(1);
  Tensor<T> out(Shape{indices.size(), cols});
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] >= tv.dim(0)) {
      throw std::out_of_range("gather_rows: index " + std::to_string(indices[r]) + " >= " +
                              std::to_string(tv.dim(0)));
    }
    std::copy_n(tv.row(indices[r]), cols, out.row(r));
  }
  const bool ng = node(table).needs_grad;
  Var o = push(std::move(out), ng, "gather_rows");
  if (ng) {
    node(o).backward = [this, table, o, cols, indices = std::move(indices)] {
      const Tensor<T>& g = nodes_[o.id].grad;
      Tensor<T>& gt = grad_buffer(table.id);
      for (std::size_t r = 0; r < indices.size(); ++r) {
        T* dst = gt.row(indices[r]);
        const T* src = g.row(r);
        for (std::size_t c = 0; c < cols; ++c) dst[c] += src[c];
      }
    };
  }
  return o;
}

template <typename T>
Var Graph<T>::softmax_rows(Var x, const std::vector<bool>* column_mask) {
  const Tensor<T>& xv = value(x);
  require_rank2(xv, "softmax_rows");
  const std::size_t rows = xv.dim(0), cols = xv.dim(1);
  if (cols == 0) throw ShapeError("softmax_rows: empty rows");
  if (column_mask) {
    if (column_mask->size() != cols) throw ShapeError("softmax_rows: mask length mismatch");
    if (std::all_of(column_mask->begin(), column_mask->end(), [](bool b) { return b; })) {
      throw std::invalid_argument("softmax_rows: every position is masked");
    }
  }
  auto valid = [&](std::size_t c) { return !column_mask || !(*column_mask)[c]; };
  Tensor<T> out(Shape{rows, cols});
  for (std::size_t r = 0; r < rows; ++r) {
    const T* in = xv.row(r);
    T* y = out.row(r);
    T mx = -std::numeric_limits<T>::infinity();
    for (std::size_t c = 0; c < cols; ++c)
      if (valid(c)) mx = std::max(mx, in[c]);
    T s = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      y[c] = valid(c) ? std::exp(in[c] - mx) : T{0};
      s += y[c];
    }
    for (std::size_t c = 0; c < cols; ++c) y[c] /= s;
  }
  const bool ng = node(x).needs_grad;
  Var o = push(std::move(out), ng, "softmax_rows");
  if (ng) {
    node(o).backward = [this, x, o, rows, cols] {
      const Tensor<T>& g = nodes_[o.id].grad;
      const Tensor<T>& y = *nodes_[o.id].value;
      Tensor<T>& gx = grad_buffer(x.id);
      for (std::size_t r = 0; r < rows; ++r) {
        const T* gr = g.row(r);
        const T* yr = y.row(r);
        T dot = 0;
        for (std::size_t c = 0; c < cols; ++c) dot += gr[c] * yr[c];
        T* d = gx.row(r);
        for (std::size_t c = 0; c < cols; ++c) d[c] += yr[c] * (gr[c] - dot);
      }
    };
  }
  return o;
}

template <typename T>
Var Graph<T>::concat_cols(Var a, Var b) {
  const Tensor<T>& av = value(a);
  const Tensor<T>& bv = value(b);
  require_rank2(av, "concat_cols");
  require_rank2(bv, "concat_cols");
  if (av.dim(0) != bv.dim(0)) throw ShapeError("concat_cols: row count mismatch");
  const std::size_t rows = av.dim(0), ca = av.dim(1), cb = bv.dim(1);
  Tensor<T> out(Shape{rows, ca + cb});
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy_n(av.row(r), ca, out.row(r));
    std::copy_n(bv.row(r), cb, out.row(r) + ca);
  }
  const bool ng = node(a).needs_grad || node(b).needs_grad;
  Var o = push(std::move(out), ng, "concat_cols");
  if (ng) {
    node(o).backward = [this, a, b, o, rows, ca, cb] {
      const Tensor<T>& g = nodes_[o.id].grad;
      if (nodes_[a.id].needs_grad) {
        Tensor<T>& ga = grad_buffer(a.id);
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t c = 0; c < ca; ++c) ga.at(r, c) += g.at(r, c);
      }
      if (nodes_[b.id].needs_grad) {
        Tensor<T>& gb = grad_buffer(b.id);
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t c = 0; c < cb; ++c) gb.at(r, c) += g.at(r, ca + c);
      }
    };
  }
  return o;
}

template <typename T>
Var Graph<T>::dropout(Var x, double p, Rng& rng) {
  if (p < 0.0 || p >= 1.0) throw std::invalid_argument("dropout: p must be in [0, 1)");
  if (p == 0.0) return x;
  const Tensor<T>& xv = value(x);
  Tensor<T> mask(xv.shape());
  const T keep_scale = static_cast<T>(1.0 / (1.0 - p));
  for (auto& m : mask.data()) m = rng.uniform() < p ? T{0} : keep_scale;
  Tensor<T> out = xv;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= mask[i];
  const bool ng = node(x).needs_grad;
  Var o = push(std::move(out), ng, "dropout");
  if (ng) {
    node(o).backward = [this, x, o, mask = std::move(mask)] {
      const Tensor<T>& g = nodes_[o.id].grad;
      Tensor<T>& gx = grad_buffer(x.id);
      for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i] * mask[i];
    };
  }
  return o;
}

template <typename T>
Var Graph<T>::cross_entropy_sum(Var logits, std::vector<std::size_t> targets) {
  const Tensor<T>& lv = value(logits);
  require_rank2(lv, "cross_entropy_sum");
  const std::size_t rows = lv.dim(0), vocab = lv.dim(1);
  if (targets.size() != rows) throw ShapeError("cross_entropy_sum: target count mismatch");
  Tensor<T> probs(Shape{rows, vocab});
  T total = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (targets[r] >= vocab) {
      throw std::out_of_range("cross_entropy_sum: target " + std::to_string(targets[r]) +
                              " outside vocabulary of " + std::to_string(vocab));
    }
    const T* in = lv.row(r);
    const T lse = log_sum_exp(in, vocab);
    T* pr = probs.row(r);
    for (std::size_t c = 0; c < vocab; ++c) pr[c] = std::exp(in[c] - lse);
    total += lse - in[targets[r]];
  }
  const bool ng = node(logits).needs_grad;
  Var o = push(Tensor<T>::scalar(total), ng, "cross_entropy_sum");
  if (ng) {
    node(o).backward = [this, logits, o, rows, vocab, probs = std::move(probs),
                        targets = std::move(targets)] {
      const T g = nodes_[o.id].grad[0];
      Tensor<T>& gl = grad_buffer(logits.id);
      for (std::size_t r = 0; r < rows; ++r) {
        T* d = gl.row(r);
        const T* pr = probs.row(r);
        for (std::size_t c = 0; c < vocab; ++c) d[c] += g * pr[c];
        d[targets[r]] -= g;
      }
    };
  }
  return o;
}

template <typename T>
Var Graph<T>::sum(Var x) {
  T s = 0;
  for (T v : value(x).data()) s += v;
  const bool ng = node(x).needs_grad;
  Var o = push(Tensor<T>::scalar(s), ng, "sum");
  if (ng) {
    node(o).backward = [this, x, o] {
      const T g = nodes_[o.id].grad[0];
      for (auto& d : grad_buffer(x.id).data()) d += g;
    };
  }
  return o;
}

template <typename T>
void Graph<T>::backward(Var loss, T seed) {
  ensure_open();
  const Tensor<T>& lv = value(loss);
  if (lv.size() != 1) throw ShapeError("backward: loss must be a scalar, got " + shape_str(lv.shape()));
  spent_ = true;
  if (!node(loss).needs_grad) return;
  grad_buffer(loss.id)[0] = seed;
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    Node& n = nodes_[i];
    if (n.has_grad && n.backward) n.backward();
  }
}

template <typename T>
void Graph<T>::accumulate_param_grads(GradStore<T>& store) const {
  for (const Node& n : nodes_) {
    if (n.param_index < 0 || !n.has_grad) continue;
    axpy(store[static_cast<std::size_t>(n.param_index)], n.grad);
  }
}

template class ParamSet<float>;
template class ParamSet<double>;
template class GradStore<float>;
template class GradStore<double>;
template class Graph<float>;
template class Graph<double>;

}  // namespace hal::num
