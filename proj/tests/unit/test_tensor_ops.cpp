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

#include <gtest/gtest.h>

#include <cmath>

#include "hal/num/linalg.hpp"
#include "hal/num/ops.hpp"
#include "hal/num/tensor.hpp"
#include "hal/util/rng.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using hal::Rng;
using hal::num::ConvMode;
using hal::num::Shape;
using hal::num::Tensor;

namespace {

oracle::Matrix to_matrix(const Tensor<double>& t) {
  oracle::Matrix m(t.dim(0), std::vector<double>(t.dim(1)));
  for (std::size_t r = 0; r < t.dim(0); ++r)
    for (std::size_t c = 0; c < t.dim(1); ++c) m[r][c] = t.at(r, c);
  return m;
}

std::vector<oracle::Matrix> to_kernels(const Tensor<double>& k) {
  std::vector<oracle::Matrix> out(k.dim(0), oracle::Matrix(k.dim(1), std::vector<double>(k.dim(2))));
  for (std::size_t o = 0; o < k.dim(0); ++o)
    for (std::size_t c = 0; c < k.dim(1); ++c)
      for (std::size_t w = 0; w < k.dim(2); ++w) out[o][c][w] = k[(o * k.dim(1) + c) * k.dim(2) + w];
  return out;
}

}  // namespace

TEST(Tensor, ShapeAndScalar) {
  Tensor<float> t({2, 3}, 1.5f);
  EXPECT_EQ(t.size(), 6u);
  EXPECT_EQ(t.rank(), 2u);
  EXPECT_EQ(t.at(1, 2), 1.5f);
  EXPECT_EQ(Tensor<double>::scalar(4.0).item(), 4.0);
  EXPECT_THROW(Tensor<double>(Shape{2, 2}, std::vector<double>{1, 2, 3}), hal::num::ShapeError);
  EXPECT_THROW(t.item(), std::exception);
}

TEST(Tensor, FiniteCheck) {
  Tensor<double> t({3});
  EXPECT_TRUE(t.all_finite());
  t[1] = NAN;
  EXPECT_FALSE(t.all_finite());
  EXPECT_THROW(hal::num::require_finite(t, "probe"), hal::num::NumericError);
}

TEST(Conv1d, ZeroKernelsGiveZeroOutput) {
  Rng rng(1);
  const auto x = fixtures::random_tensor<double>({6, 3}, rng);
  const Tensor<double> k({4, 3, 3});
  for (auto mode : {ConvMode::same, ConvMode::causal}) {
    const auto y = hal::num::conv1d(x, k, mode);
    EXPECT_EQ(y.shape(), (Shape{6, 4}));
    for (double v : y.data()) EXPECT_EQ(v, 0.0);
  }
}

TEST(Conv1d, IdentityKernelCopiesInput) {
  Rng rng(2);
  const auto x = fixtures::random_tensor<double>({5, 3}, rng);
  Tensor<double> k({3, 3, 1});
  for (std::size_t c = 0; c < 3; ++c) k[c * 3 + c] = 1.0;
  for (auto mode : {ConvMode::same, ConvMode::causal}) EXPECT_EQ(hal::num::conv1d(x, k, mode), x);
}

TEST(Conv1d, MatchesNaiveLoop) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = fixtures::random_tensor<double>({5, 2}, rng);
    const auto k = fixtures::random_tensor<double>({3, 2, 3}, rng);
    const auto b = fixtures::random_tensor<double>({3}, rng);
    std::vector<double> bias(b.data().begin(), b.data().end());
    for (auto mode : {ConvMode::same, ConvMode::causal}) {
      const auto y = hal::num::conv1d(x, k, mode, &b);
      const auto ref = oracle::conv1d(to_matrix(x), to_kernels(k), mode == ConvMode::causal, &bias);
      for (std::size_t t = 0; t < 5; ++t)
        for (std::size_t o = 0; o < 3; ++o) EXPECT_NEAR(y.at(t, o), ref[t][o], 1e-6);
    }
  }
}

TEST(Conv1d, CausalNeverSeesTheFuture) {
  Rng rng(4);
  auto x = fixtures::random_tensor<double>({7, 2}, rng);
  const auto k = fixtures::random_tensor<double>({2, 2, 5}, rng);
  const auto before = hal::num::conv1d(x, k, ConvMode::causal);
  x.at(4, 0) += 1.0;
  const auto after = hal::num::conv1d(x, k, ConvMode::causal);
  for (std::size_t t = 0; t < 4; ++t)
    for (std::size_t o = 0; o < 2; ++o) EXPECT_EQ(before.at(t, o), after.at(t, o));
  EXPECT_NE(before.at(4, 0), after.at(4, 0));
}

TEST(Conv1d, ShapeErrors) {
  const Tensor<double> x({4, 3});
  EXPECT_THROW(hal::num::conv1d(x, Tensor<double>({2, 2, 3}), ConvMode::same), hal::num::ShapeError);
  EXPECT_THROW(hal::num::conv1d(x, Tensor<double>({2, 3, 2}), ConvMode::same), hal::num::ShapeError);
  EXPECT_NO_THROW(hal::num::conv1d(x, Tensor<double>({2, 3, 2}), ConvMode::causal));
}

TEST(Conv1d, BackwardMatchesFiniteDifferences) {
  Rng rng(5);
  auto x = fixtures::random_tensor<double>({5, 2}, rng);
  auto k = fixtures::random_tensor<double>({3, 2, 3}, rng);
  auto b = fixtures::random_tensor<double>({3}, rng);
  const auto w = fixtures::random_tensor<double>({5, 3}, rng);
  for (auto mode : {ConvMode::same, ConvMode::causal}) {
    auto loss = [&] {
      const auto y = hal::num::conv1d(x, k, mode, &b);
      double s = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * w[i];
      return s;
    };
    Tensor<double> gx(x.shape()), gk(k.shape()), gb(b.shape());
    hal::num::conv1d_backward(x, k, mode, w, &gx, &gk, &gb);
    for (auto [param, grad] : {std::pair{&x, &gx}, std::pair{&k, &gk}, std::pair{&b, &gb}}) {
      for (std::size_t i = 0; i < param->size(); ++i) {
        const double keep = (*param)[i];
        (*param)[i] = keep + 1e-6;
        const double up = loss();
        (*param)[i] = keep - 1e-6;
        const double down = loss();
        (*param)[i] = keep;
        EXPECT_NEAR((*grad)[i], (up - down) / 2e-6, 1e-6);
      }
    }
  }
}

TEST(Softmax, UniformAndStable) {
  const auto a = hal::num::softmax_row(Tensor<double>({4}, 0.0));
  for (double v : a.data()) EXPECT_DOUBLE_EQ(v, 0.25);
  const auto b = hal::num::softmax_row(Tensor<double>({2}, 1000.0));
  EXPECT_DOUBLE_EQ(b[0], 0.5);
  EXPECT_DOUBLE_EQ(b[1], 0.5);
  const auto c = hal::num::softmax_row(Tensor<float>({2}, 1000.0f));
  EXPECT_FLOAT_EQ(c[0], 0.5f);
  EXPECT_THROW(hal::num::softmax_row(Tensor<double>(Shape{0})), std::invalid_argument);
}

TEST(Softmax, ShiftInvariant) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = fixtures::random_tensor<double>({7}, rng, 3.0);
    auto shifted = x;
    const double c = rng.normal(0.0, 50.0);
    for (std::size_t i = 0; i < 7; ++i) shifted[i] += c;
    const auto p = hal::num::softmax_row(x), q = hal::num::softmax_row(shifted);
    double total = 0.0;
    for (std::size_t i = 0; i < 7; ++i) {
      EXPECT_NEAR(p[i], q[i], 1e-6);
      total += p[i];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(CrossEntropy, KnownValues) {
  EXPECT_NEAR(hal::num::cross_entropy(Tensor<double>({8}, 0.0), 3), std::log(8.0), 1e-12);
  EXPECT_NEAR(std::log(8.0), 2.0794, 1e-4);
  Tensor<double> sure({5}, -50.0);
  sure[2] = 50.0;
  EXPECT_NEAR(hal::num::cross_entropy(sure, 2), 0.0, 1e-12);
  EXPECT_THROW(hal::num::cross_entropy(sure, 5), std::out_of_range);
}

TEST(CrossEntropy, MatchesDirectSoftmax) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = fixtures::random_tensor<double>({6}, rng, 2.0);
    const std::size_t target = rng.below(6);
    double z = 0.0;
    for (double v : x.data()) z += std::exp(v);
    EXPECT_NEAR(hal::num::cross_entropy(x, target), -std::log(std::exp(x[target]) / z), 1e-6);
  }
}

TEST(LogSumExp, LargeValues) {
  const double x[] = {1000.0, 1000.0};
  EXPECT_NEAR(hal::num::log_sum_exp(x, 2), 1000.0 + std::log(2.0), 1e-9);
}

TEST(Gemm, MatchesNaiveProduct) {
  Rng rng(8);
  for (bool ta : {false, true})
    for (bool tb : {false, true}) {
      const std::size_t m = 3, n = 4, k = 5;
      const auto a = fixtures::random_tensor<double>(ta ? Shape{k, m} : Shape{m, k}, rng);
      const auto b = fixtures::random_tensor<double>(tb ? Shape{n, k} : Shape{k, n}, rng);
      auto c = fixtures::random_tensor<double>({m, n}, rng);
      const auto c0 = c;
      hal::num::linalg::gemm(ta, tb, m, n, k, 2.0, a.ptr(), b.ptr(), 0.5, c.ptr());
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          double s = 0.0;
          for (std::size_t l = 0; l < k; ++l) s += (ta ? a.at(l, i) : a.at(i, l)) * (tb ? b.at(j, l) : b.at(l, j));
          EXPECT_NEAR(c.at(i, j), 2.0 * s + 0.5 * c0.at(i, j), 1e-12);
        }
    }
}
