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

#include "hal/model/network.hpp"
#include "hal/model/params.hpp"
#include "hal/model/session.hpp"
#include "support/fixtures.hpp"

using hal::model::DecoderSession;
using hal::model::DecoderWeights;
using hal::model::ModelMode;
using hal::model::SourceTokens;
using hal::text::Vocab;

namespace {

// Graph decoder distribution with PAD and BOS removed and the rest renormalised.
std::vector<double> reference_log_probs(const hal::model::ModelConfig& c, const hal::num::ParamSet<double>& ps,
                                        const SourceTokens& src, const std::vector<std::size_t>& prefix) {
  std::vector<std::size_t> prev{Vocab::kBos};
  prev.insert(prev.end(), prefix.begin(), prefix.end());
  const auto p = hal::model::decode_step(c, ps, src, prev);
  const double z = 1.0 - p[Vocab::kPad] - p[Vocab::kBos];
  std::vector<double> out(p.size());
  for (std::size_t v = 0; v < p.size(); ++v)
    out[v] = (v == Vocab::kPad || v == Vocab::kBos) ? -INFINITY : std::log(p[v] / z);
  return out;
}

SourceTokens source_for(const hal::model::ModelConfig& c) {
  SourceTokens s;
  s.words = {4, 6, 9, 5, 7};
  if (c.dual()) s.phones = {5, 8, 11, 4, 6, 9, 10, 7};
  return s;
}

}  // namespace

class SessionTest : public ::testing::TestWithParam<ModelMode> {};

TEST_P(SessionTest, MatchesGraphDecoderOnBranchingBatch) {
  auto c = fixtures::tiny_config(GetParam());
  c.dec_layers = 2;
  c.dec_kernel = 3;
  const auto pf = hal::model::init_params<float>(c, 21);
  const auto pd = pf.cast<double>();
  const auto src = source_for(c);
  const DecoderWeights w(c, pf);
  DecoderSession s(w, src);
  s.start(1);
  EXPECT_EQ(s.step(), 0u);
  // rows: their prefixes, grown step by step with branching parents
  std::vector<std::vector<std::size_t>> prefixes{{}};
  const std::vector<std::vector<std::pair<std::size_t, std::size_t>>> plan = {
      {{0, 4}, {0, 5}, {0, 8}},
      {{2, 6}, {0, 4}, {0, 7}, {1, 3}},
      {{3, 5}, {3, 5}, {1, 6}},
      {{0, 4}, {2, 8}},
  };
  std::vector<double> lp;
  for (const auto& step : plan) {
    s.log_probs(lp);
    ASSERT_EQ(lp.size(), prefixes.size() * c.tgt_vocab);
    for (std::size_t r = 0; r < prefixes.size(); ++r) {
      const auto ref = reference_log_probs(c, pd, src, prefixes[r]);
      for (std::size_t v = 0; v < c.tgt_vocab; ++v) {
        if (std::isinf(ref[v])) {
          EXPECT_EQ(lp[r * c.tgt_vocab + v], -INFINITY);
        } else {
          EXPECT_NEAR(lp[r * c.tgt_vocab + v], ref[v], 1e-4);
        }
      }
    }
    std::vector<std::size_t> parents, tokens;
    std::vector<std::vector<std::size_t>> next;
    for (auto [p, t] : step) {
      parents.push_back(p);
      tokens.push_back(t);
      next.push_back(prefixes[p]);
      next.back().push_back(t);
    }
    s.advance(parents, tokens);
    prefixes = next;
    EXPECT_EQ(s.rows(), prefixes.size());
  }
  EXPECT_EQ(s.step(), plan.size());
}

TEST_P(SessionTest, RowsAreIndependentOfBatchComposition) {
  const auto c = fixtures::tiny_config(GetParam());
  const auto pf = hal::model::init_params<float>(c, 22);
  const auto src = source_for(c);
  const DecoderWeights w(c, pf);
  DecoderSession one(w, src), many(w, src);
  one.start(1);
  many.start(3);
  std::vector<double> a, b;
  for (std::size_t t : {4u, 7u, 5u}) {
    one.log_probs(a);
    many.log_probs(b);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t v = 0; v < c.tgt_vocab; ++v) {
        if (std::isinf(a[v])) {
          EXPECT_EQ(b[r * c.tgt_vocab + v], a[v]);
        } else {
          EXPECT_NEAR(b[r * c.tgt_vocab + v], a[v], 1e-6);
        }
      }
    const std::size_t p1 = 0;
    one.advance({&p1, 1}, {&t, 1});
    const std::vector<std::size_t> ps{0, 1, 2}, ts{t, t, t};
    many.advance(ps, ts);
  }
}

INSTANTIATE_TEST_SUITE_P(Modes, SessionTest, ::testing::Values(ModelMode::single, ModelMode::dual));

TEST(Session, RejectsBadAdvance) {
  const auto c = fixtures::tiny_config(ModelMode::single);
  const auto pf = hal::model::init_params<float>(c, 23);
  const DecoderWeights w(c, pf);
  DecoderSession s(w, source_for(c));
  s.start(2);
  const std::vector<std::size_t> parents{0, 5}, tokens{4, 4};
  EXPECT_THROW(s.advance(parents, tokens), std::logic_error);
  std::vector<double> lp;
  s.log_probs(lp);
  EXPECT_THROW(s.advance(parents, tokens), std::out_of_range);
  const std::vector<std::size_t> p2{0}, t2{99};
  EXPECT_THROW(s.advance(p2, t2), std::out_of_range);
}
