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
#include <functional>

#include "hal/num/graph.hpp"
#include "hal/util/rng.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using hal::Rng;
using hal::num::ConvMode;
using hal::num::GradStore;
using hal::num::Graph;
using hal::num::ParamSet;
using hal::num::Shape;
using hal::num::Tensor;
using hal::num::Var;

namespace {

using Builder = std::function<Var(Graph<double>&, std::vector<Var>&)>;

double run_loss(ParamSet<double>& ps, const Builder& build) {
  Graph<double> g;
  std::vector<Var> p;
  for (std::size_t i = 0; i < ps.size(); ++i) p.push_back(g.param(ps, i));
  return g.value(build(g, p)).item();
}

// Largest per-tensor relative error between backward() and central differences.
double worst_gradient_error(ParamSet<double>& ps, const Builder& build) {
  Graph<double> g;
  std::vector<Var> p;
  for (std::size_t i = 0; i < ps.size(); ++i) p.push_back(g.param(ps, i));
  const Var loss = build(g, p);
  g.backward(loss);
  GradStore<double> grads(ps);
  g.accumulate_param_grads(grads);
  double worst = 0.0;
  for (const auto& [name, err] : oracle::gradient_check(ps, grads, [&] { return run_loss(ps, build); }))
    worst = std::max(worst, err);
  return worst;
}

ParamSet<double> random_params(const std::vector<std::pair<std::string, Shape>>& shapes, std::uint64_t seed) {
  Rng rng(seed);
  ParamSet<double> ps;
  for (const auto& [n, s] : shapes) ps.add(n, fixtures::random_tensor<double>(s, rng, 0.5));
  return ps;
}

}  // namespace

TEST(ParamSet, NamesAndLookup) {
  ParamSet<double> ps;
  ps.add("a", Tensor<double>({2, 2}, 1.0));
  ps.add("b", Tensor<double>({3}));
  EXPECT_EQ(ps.index("b"), 1u);
  EXPECT_EQ(ps.element_count(), 7u);
  EXPECT_FALSE(ps.find("c").has_value());
  EXPECT_THROW(ps.add("a", Tensor<double>({1})), std::invalid_argument);
  EXPECT_THROW(ps.index("c"), std::out_of_range);
  EXPECT_EQ(ps.cast<float>()["a"][3], 1.0f);
}

TEST(Graph, SumGivesAllOnes) {
  ParamSet<double> ps;
  ps.add("theta", Tensor<double>({3, 2}, 0.7));
  Graph<double> g;
  const Var loss = g.sum(g.param(ps, 0));
  g.backward(loss);
  GradStore<double> grads(ps);
  g.accumulate_param_grads(grads);
  for (double v : grads[0].data()) EXPECT_EQ(v, 1.0);
}

TEST(Graph, ConstantLossGivesZeros) {
  ParamSet<double> ps;
  ps.add("theta", Tensor<double>({4}, 0.3));
  Graph<double> g;
  g.param(ps, 0);
  const Var loss = g.sum(g.constant(Tensor<double>({2}, 1.0)));
  g.backward(loss);
  GradStore<double> grads(ps);
  g.accumulate_param_grads(grads);
  for (double v : grads[0].data()) EXPECT_EQ(v, 0.0);
}

TEST(Graph, BackwardRunsOnce) {
  Graph<double> g;
  const Var x = g.variable(Tensor<double>({2}, 1.0));
  const Var loss = g.sum(x);
  g.backward(loss);
  EXPECT_EQ(g.grad(x)[0], 1.0);
  EXPECT_THROW(g.backward(loss), std::logic_error);
  EXPECT_THROW(g.sum(x), std::logic_error);
}

TEST(Graph, NonFiniteValuesThrow) {
  Graph<double> g;
  const Var x = g.constant(Tensor<double>({1}, 1e300));
  EXPECT_THROW(g.mul(x, x), hal::num::NumericError);
}

TEST(Graph, EachOpMatchesFiniteDifferences) {
  const std::vector<std::pair<std::string, Builder>> cases = {
      {"add_scale_mul",
       [](Graph<double>& g, std::vector<Var>& p) { return g.sum(g.mul(g.scale(g.add(p[0], p[1]), 1.5), p[0])); }},
      {"mul_rows",
       [](Graph<double>& g, std::vector<Var>& p) { return g.sum(g.tanh(g.mul_rows(p[0], {1.0, 0.0, -2.0}))); }},
      {"matmul", [](Graph<double>& g, std::vector<Var>& p) { return g.sum(g.tanh(g.matmul(p[0], p[1], true))); }},
      {"linear", [](Graph<double>& g, std::vector<Var>& p) { return g.sum(g.tanh(g.linear(p[0], p[2], p[3]))); }},
      {"glu", [](Graph<double>& g, std::vector<Var>& p) { return g.sum(g.glu(g.concat_cols(p[0], p[1]))); }},
      {"softmax_masked",
       [](Graph<double>& g, std::vector<Var>& p) {
         static const std::vector<bool> mask{false, true};
         return g.cross_entropy_sum(g.softmax_rows(p[0], &mask), {0, 0, 1});
       }},
      {"gather", [](Graph<double>& g, std::vector<Var>& p) { return g.sum(g.tanh(g.gather_rows(p[1], {2, 0, 2}))); }},
      {"conv_same",
       [](Graph<double>& g, std::vector<Var>& p) { return g.sum(g.tanh(g.conv1d(p[0], p[4], p[5], ConvMode::same))); }},
      {"conv_causal",
       [](Graph<double>& g, std::vector<Var>& p) {
         return g.sum(g.tanh(g.conv1d(p[0], p[4], p[5], ConvMode::causal)));
       }},
      {"cross_entropy", [](Graph<double>& g, std::vector<Var>& p) { return g.cross_entropy_sum(p[0], {1, 0, 1}); }},
  };
  for (const auto& [name, build] : cases) {
    auto ps = random_params({{"a", {3, 2}}, {"b", {3, 2}}, {"w", {4, 2}}, {"bias", {4}}, {"k", {4, 2, 3}}, {"kb", {4}}},
                            11);
    EXPECT_LT(worst_gradient_error(ps, build), 1e-7) << name;
  }
}

TEST(Graph, TwoLayerModelMatchesFiniteDifferences) {
  auto ps = random_params({{"embed", {6, 4}},
                           {"conv.k", {8, 4, 3}},
                           {"conv.b", {8}},
                           {"attn.w", {4, 4}},
                           {"attn.b", {4}},
                           {"out.w", {5, 4}},
                           {"out.b", {5}}},
                          12);
  const Builder build = [](Graph<double>& g, std::vector<Var>& p) {
    const Var x = g.gather_rows(p[0], {1, 4, 2, 5});
    const Var h = g.add(x, g.glu(g.conv1d(x, p[1], p[2], ConvMode::causal)));
    const Var q = g.linear(h, p[3], p[4]);
    const Var a = g.softmax_rows(g.matmul(q, x, true));
    const Var c = g.add(h, g.matmul(a, x));
    return g.cross_entropy_sum(g.linear(c, p[5], p[6]), {0, 3, 1, 2});
  };
  EXPECT_LT(worst_gradient_error(ps, build), 1e-7);
}

TEST(Graph, MaskedColumnsGetExactlyZero) {
  Rng rng(13);
  Graph<double> g;
  const std::vector<bool> mask{false, true, false, true};
  const Var s = g.softmax_rows(g.constant(fixtures::random_tensor<double>({3, 4}, rng, 5.0)), &mask);
  const auto& a = g.value(s);
  for (std::size_t r = 0; r < 3; ++r) {
    EXPECT_EQ(a.at(r, 1), 0.0);
    EXPECT_EQ(a.at(r, 3), 0.0);
    EXPECT_NEAR(a.at(r, 0) + a.at(r, 2), 1.0, 1e-12);
  }
  const std::vector<bool> all{true, true, true, true};
  EXPECT_THROW(g.softmax_rows(g.constant(Tensor<double>({1, 4})), &all), std::invalid_argument);
}

TEST(Graph, DropoutZeroIsIdentityAndScalesOtherwise) {
  Rng rng(14);
  Graph<double> g;
  const Var x = g.constant(Tensor<double>({100, 10}, 1.0));
  EXPECT_EQ(g.dropout(x, 0.0, rng).id, x.id);
  const auto& y = g.value(g.dropout(x, 0.5, rng));
  std::size_t zeros = 0;
  for (double v : y.data()) {
    EXPECT_TRUE(v == 0.0 || v == 2.0);
    zeros += v == 0.0;
  }
  EXPECT_NEAR(static_cast<double>(zeros) / 1000.0, 0.5, 0.06);
}
