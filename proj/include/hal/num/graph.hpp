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
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hal/num/ops.hpp"
#include "hal/num/tensor.hpp"

namespace hal {
class Rng;
}

namespace hal::num {

/// Named, ordered collection of learnable tensors.
template <typename T>
class ParamSet {
 public:
  /// Appends a tensor; throws std::invalid_argument on a duplicate name.
  std::size_t add(std::string name, Tensor<T> value);

  std::size_t size() const noexcept { return values_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  Tensor<T>& value(std::size_t i) { return values_.at(i); }
  const Tensor<T>& value(std::size_t i) const { return values_.at(i); }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Index of \p name; throws std::out_of_range if absent.
  std::size_t index(std::string_view name) const;

  Tensor<T>& operator[](std::string_view name) { return values_[index(name)]; }
  const Tensor<T>& operator[](std::string_view name) const { return values_[index(name)]; }

  /// Total number of scalar parameters.
  std::size_t element_count() const;

  template <typename U>
  ParamSet<U> cast() const {
    ParamSet<U> out;
    for (std::size_t i = 0; i < size(); ++i) out.add(names_[i], values_[i].template cast<U>());
    return out;
  }

  friend bool operator==(const ParamSet& a, const ParamSet& b) {
    return a.names_ == b.names_ && a.values_ == b.values_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Tensor<T>> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// One gradient tensor per parameter, same shapes as the ParamSet it was
/// built from.
template <typename T>
class GradStore {
 public:
  GradStore() = default;
  explicit GradStore(const ParamSet<T>& params);

  std::size_t size() const noexcept { return grads_.size(); }
  Tensor<T>& operator[](std::size_t i) { return grads_.at(i); }
  const Tensor<T>& operator[](std::size_t i) const { return grads_.at(i); }

  void zero();
  void scale(T factor);
  /// Euclidean norm over every element, accumulated in double.
  double norm() const;
  bool all_finite() const;

 private:
  std::vector<Tensor<T>> grads_;
};

/// Handle to a value recorded in a Graph.
struct Var {
  static constexpr std::uint32_t kNone = 0xffffffffu;
  std::uint32_t id = kNone;
  bool valid() const noexcept { return id != kNone; }
};

/// Tape of executed differentiable operations for one forward pass.
///
/// Values are computed eagerly. backward() walks the tape in reverse and may
/// run once; the graph is then spent. Parameter nodes reference the ParamSet
/// storage directly, so the ParamSet must outlive the graph and must not be
/// modified while the graph is alive. Every op output is checked for finite
/// values and throws NumericError otherwise.
template <typename T>
class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Var constant(Tensor<T> value);
  /// Leaf that receives a gradient.
  Var variable(Tensor<T> value);
  /// Leaf bound to params.value(index); its gradient is delivered by
  /// accumulate_param_grads().
  Var param(const ParamSet<T>& params, std::size_t index);

  const Tensor<T>& value(Var v) const;
  /// Gradient of a node after backward(). Zero-filled if no gradient reached it.
  const Tensor<T>& grad(Var v);
  bool requires_grad(Var v) const { return node(v).needs_grad; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  Var add(Var a, Var b);
  Var scale(Var a, T factor);
  Var mul(Var a, Var b);
  /// Multiplies row r of a rank-2 value by factors[r] (a constant).
  Var mul_rows(Var x, std::vector<T> factors);
  /// a (m x k) times b (k x n), or times b^T when \p trans_b (b is n x k).
  Var matmul(Var a, Var b, bool trans_b = false);
  /// x (n x in) W^T + b, with W stored out x in and optional bias (out).
  Var linear(Var x, Var weight, Var bias = {});
  Var conv1d(Var x, Var kernels, Var bias, ConvMode mode);
  /// Gated linear unit over channels: [a | b] -> a * sigmoid(b).
  Var glu(Var x);
  Var tanh(Var x);
  /// Rows of \p table selected by \p indices.
  Var gather_rows(Var table, std::vector<std::size_t> indices);
  /// Row-wise softmax. With \p column_mask, columns flagged true get weight exactly
  /// zero and each row is normalised over the unmasked columns only.
  Var softmax_rows(Var x, const std::vector<bool>* column_mask = nullptr);
  Var concat_cols(Var a, Var b);
  /// Inverted dropout with keep probability 1-p; identity when p == 0.
  Var dropout(Var x, double p, Rng& rng);
  /// Sum over rows of -log softmax(logits[r])[targets[r]]. Returns a scalar.
  Var cross_entropy_sum(Var logits, std::vector<std::size_t> targets);
  Var sum(Var x);

  /// Reverse pass from the scalar \p loss, seeded with \p seed.
  void backward(Var loss, T seed = T{1});
  /// Adds the gradient of every parameter node into \p store.
  void accumulate_param_grads(GradStore<T>& store) const;

 private:
  struct Node {
    Tensor<T> owned;
    const Tensor<T>* value = nullptr;
    Tensor<T> grad;
    bool needs_grad = false;
    bool has_grad = false;
    std::ptrdiff_t param_index = -1;
    std::function<void()> backward;
  };

  Node& node(Var v);
  const Node& node(Var v) const;
  Var push(Tensor<T> value, bool needs_grad, const char* op);
  Tensor<T>& grad_buffer(std::uint32_t id);
  void ensure_open() const;

  std::deque<Node> nodes_;
  bool spent_ = false;
};

extern template class ParamSet<float>;
extern template class ParamSet<double>;
extern template class GradStore<float>;
extern template class GradStore<double>;
extern template class Graph<float>;
extern template class Graph<double>;

}  // namespace hal::num
