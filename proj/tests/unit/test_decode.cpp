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

#include "hal/decode/beam.hpp"
#include "hal/decode/nbest.hpp"
#include "hal/decode/sampler.hpp"
#include "hal/model/params.hpp"
#include "hal/model/session.hpp"
#include "hal/synth/channel.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using hal::decode::BeamOptions;
using hal::decode::Hypothesis;
using hal::decode::SampleOptions;
using hal::decode::StopRule;
using hal::synth::DistributionModel;
using Seq = std::vector<std::size_t>;

namespace {

constexpr std::size_t kEos = 2;

DistributionModel uniform_over(std::size_t n_sequences) {
  // all sequences of length 4 over tokens 3..9, in order, until n are listed
  std::vector<std::pair<Seq, double>> dist;
  for (std::size_t i = 0; dist.size() < n_sequences; ++i) {
    Seq s;
    std::size_t x = i;
    for (int d = 0; d < 4; ++d) {
      s.push_back(3 + x % 7);
      x /= 7;
    }
    dist.push_back({s, 1.0});
  }
  return DistributionModel(dist, 10, kEos);
}

}  // namespace

TEST(Beam, DeterministicModelGivesOneHypothesisWithScoreZero) {
  DistributionModel m({{{4, 5, 6}, 1.0}}, 8, kEos);
  const auto hyps = hal::decode::beam_search(m, {8, 5, 10});
  ASSERT_EQ(hyps.size(), 1u);
  EXPECT_EQ(hyps[0].tokens, (Seq{4, 5, 6}));
  EXPECT_EQ(hyps[0].score, 0.0);
}

TEST(Beam, MatchesExhaustiveEnumeration) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    fixtures::HashedModel m(4, 0, seed);
    const auto oracle_list = oracle::enumerate_beam_oracle(m, 3);
    const auto hyps = hal::decode::beam_search(m, {64, 64, 3});
    ASSERT_EQ(hyps.size(), std::min<std::size_t>(64, oracle_list.size()));
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      EXPECT_EQ(hyps[i].tokens, oracle_list[i].first) << "seed " << seed << " rank " << i;
      EXPECT_NEAR(hyps[i].score, oracle_list[i].second, 1e-12);
    }
  }
}

TEST(Beam, TopOneOfRealModelMatchesEnumeration) {
  auto c = fixtures::tiny_config(hal::model::ModelMode::single);
  c.tgt_vocab = 6;
  const auto ps = hal::model::init_params<float>(c, 41);
  const hal::model::DecoderWeights w(c, ps);
  hal::model::DecoderSession s(w, {{4, 5, 6}, {}});
  const auto oracle_list = oracle::enumerate_beam_oracle(s, 3);
  const auto hyps = hal::decode::beam_search(s, {64, 10, 3});
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    EXPECT_EQ(hyps[i].tokens, oracle_list[i].first);
    EXPECT_NEAR(hyps[i].score, oracle_list[i].second, 1e-5);
  }
}

TEST(Beam, ShortListIsPrefixOfLongList) {
  fixtures::HashedModel m(7, 2, 99, 1.0);
  const auto one = hal::decode::beam_search(m, {16, 1, 6});
  const auto many = hal::decode::beam_search(m, {16, 16, 6});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], many[0]);
  for (std::size_t i = 1; i < many.size(); ++i) EXPECT_GE(many[i - 1].score, many[i].score);
}

TEST(Beam, OptionChecks) {
  fixtures::HashedModel m(4, 0, 1);
  EXPECT_THROW(hal::decode::beam_search(m, {4, 5, 3}), std::invalid_argument);
  EXPECT_THROW(hal::decode::beam_search(m, {4, 0, 3}), std::invalid_argument);
  EXPECT_THROW(hal::decode::beam_search(m, {4, 2, 0}), std::invalid_argument);
  EXPECT_EQ(hal::decode::default_max_len(10), 25u);
}

TEST(Sampler, DeterministicModelStopsAtMinimum) {
  DistributionModel m({{{4, 5}, 1.0}}, 8, kEos);
  hal::decode::SampleStats stats;
  const auto hyps = hal::decode::sample_decode(m, {250, 1000, 100, 10}, 7, &stats);
  ASSERT_EQ(hyps.size(), 1u);
  EXPECT_EQ(hyps[0].tokens, (Seq{4, 5}));
  EXPECT_EQ(hyps[0].score, 250.0);
  EXPECT_EQ(stats.drawn, 250u);
}

TEST(Sampler, TwoOutcomesWithinBinomialBounds) {
  DistributionModel m({{{4}, 1.0}, {{5, 6}, 1.0}}, 8, kEos);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    hal::decode::SampleStats stats;
    const auto hyps = hal::decode::sample_decode(m, {250, 1000, 100, 10}, seed, &stats);
    ASSERT_EQ(hyps.size(), 2u);
    EXPECT_EQ(stats.drawn, 250u);
    EXPECT_EQ(hyps[0].score + hyps[1].score, 250.0);
    const double sigma = std::sqrt(250 * 0.25);
    for (const auto& h : hyps) EXPECT_LE(std::abs(h.score - 125.0), 3 * sigma);
  }
}

TEST(Sampler, ManyOutcomesHitTheCap) {
  auto m = uniform_over(2401);
  hal::decode::SampleStats stats;
  const auto hyps = hal::decode::sample_decode(m, {250, 1000, 100, 10}, 3, &stats);
  EXPECT_EQ(stats.drawn, 1000u);
  EXPECT_LE(hyps.size(), 100u);
  for (std::size_t i = 1; i < hyps.size(); ++i) EXPECT_GE(hyps[i - 1].score, hyps[i].score);
}

TEST(Sampler, ModerateVarietyStopsEarly) {
  auto m = uniform_over(60);
  hal::decode::SampleStats stats;
  const auto hyps = hal::decode::sample_decode(m, {250, 1000, 100, 10}, 4, &stats);
  EXPECT_EQ(stats.drawn, 250u);
  EXPECT_EQ(hyps.size(), stats.unique);
}

TEST(Sampler, ReachUniqueRule) {
  auto m = uniform_over(2401);
  hal::decode::SampleStats stats;
  SampleOptions opts{250, 1000, 100, 10, StopRule::reach_unique};
  const auto hyps = hal::decode::sample_decode(m, opts, 5, &stats);
  EXPECT_EQ(stats.drawn, 250u);  // 250 draws over 2401 outcomes already give > 100 distinct
  EXPECT_EQ(hyps.size(), 100u);
  auto small = uniform_over(120);
  const auto h2 = hal::decode::sample_decode(small, {250, 1000, 150, 10, StopRule::reach_unique}, 6, &stats);
  EXPECT_LE(stats.unique, 120u);
  EXPECT_EQ(stats.drawn, 1000u);
  EXPECT_EQ(h2.size(), stats.unique);
}

TEST(Sampler, ResultIndependentOfChunkingAndReproducible) {
  fixtures::HashedModel m(6, 2, 8, 0.7);
  SampleOptions a{250, 1000, 100, 8};
  SampleOptions b = a;
  b.chunk = 7;
  const auto x = hal::decode::sample_decode(m, a, 11);
  EXPECT_EQ(hal::decode::sample_decode(m, b, 11), x);
  EXPECT_EQ(hal::decode::sample_decode(m, a, 11), x);
  EXPECT_NE(hal::decode::sample_decode(m, a, 12), x);
  for (const auto& h : x) EXPECT_LE(h.tokens.size(), 8u);
}

TEST(Sampler, EmpiricalFrequenciesFollowModel) {
  DistributionModel m({{{4}, 0.7}, {{5}, 0.2}, {{6, 7}, 0.1}}, 8, kEos);
  const auto samples = hal::decode::draw_samples(m, 20000, 5, 9);
  std::map<Seq, double> freq;
  for (const auto& s : samples) freq[s] += 1.0 / 20000;
  EXPECT_NEAR(freq[Seq{4}], 0.7, 0.015);
  EXPECT_NEAR(freq[Seq{5}], 0.2, 0.015);
  EXPECT_NEAR((freq[Seq{6, 7}]), 0.1, 0.015);
}

TEST(NBest, FormatParseRoundTrip) {
  const auto v = hal::text::Vocab::from_tokens({"hello", "world"});
  const auto list = hal::decode::to_nbest("u1", {{{4, 5}, -0.25}, {{}, -1.5}, {{5}, -2.0}}, v);
  const std::string text = hal::decode::format_nbest(list);
  EXPECT_EQ(text, "u1\t1\t-0.250000\thello world\nu1\t2\t-1.500000\t\nu1\t3\t-2.000000\tworld\n");
  const auto back = hal::decode::parse_nbest(text);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], list);
  EXPECT_THROW(hal::decode::parse_nbest("u\t2\t0\tx\n"), std::invalid_argument);
  EXPECT_THROW(hal::decode::parse_nbest("u\t1\t0\tx\nu\t1\t0\ty\n"), std::invalid_argument);
  EXPECT_THROW(hal::decode::parse_nbest("u\tone\t0\tx\n"), std::invalid_argument);
  EXPECT_THROW(hal::decode::parse_nbest("u\t1\tx\n"), std::invalid_argument);
}

TEST(NBest, GroupsByIdInFirstAppearanceOrder) {
  const auto lists = hal::decode::parse_nbest("b\t2\t1\ty\na\t1\t1\tz\nb\t1\t2\tx\n");
  ASSERT_EQ(lists.size(), 2u);
  EXPECT_EQ(lists[0].id, "b");
  EXPECT_EQ(lists[0].entries[0].words, (hal::text::Words{"x"}));
  const auto idx = hal::decode::index_nbest(lists);
  EXPECT_EQ(idx.at("a")->entries.size(), 1u);
}
