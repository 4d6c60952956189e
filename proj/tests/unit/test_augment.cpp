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
#include <set>

#include "hal/augment/augment.hpp"
#include "hal/decode/beam.hpp"
#include "hal/model/params.hpp"
#include "hal/util/io.hpp"
#include "support/fixtures.hpp"

using hal::augment::AugmentPolicy;
using hal::augment::NBestSource;
using hal::text::CorpusRecord;

namespace {

std::vector<CorpusRecord> corpus(std::size_t n) {
  std::string text;
  for (std::size_t i = 0; i < n; ++i) text += "u" + std::to_string(i) + "\tthe cat sat\tthe hat sat\n";
  return hal::text::parse_corpus(text);
}

std::vector<hal::decode::NBestList> lists(std::size_t n) {
  std::vector<hal::decode::NBestList> out;
  for (std::size_t i = 0; i < n; ++i) {
    hal::decode::NBestList l{"u" + std::to_string(i), {}};
    for (const char* h : {"the hat sat", "a cat sat", "the cat set", "cat sat"})
      l.entries.push_back({hal::split_ws(h), -1.0});
    out.push_back(l);
  }
  return out;
}

hal::model::Checkpoint tiny_checkpoint() {
  hal::model::Checkpoint ck;
  ck.config = fixtures::tiny_config(hal::model::ModelMode::single);
  ck.params = hal::model::init_params<float>(ck.config, 4);
  const auto src = hal::text::Vocab::from_tokens({"the", "cat", "sat", "on", "mat", "dog"});
  const auto tgt = hal::text::Vocab::from_tokens({"the", "hat", "sat", "on", "map"});
  ck.vocabs = {{"src", "src.vocab", src.content_hash(), src.serialize()},
               {"tgt", "tgt.vocab", tgt.content_hash(), tgt.serialize()}};
  return ck;
}

}  // namespace

TEST(Transmute, RateExtremes) {
  NBestSource src(lists(1));
  hal::Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_FALSE(hal::augment::transmute("u0", "the cat sat", src, 0.0, rng).has_value());
    EXPECT_TRUE(hal::augment::transmute("u0", "the cat sat", src, 1.0, rng).has_value());
  }
  EXPECT_THROW(hal::augment::transmute("u0", "x", src, 1.5, rng), std::invalid_argument);
}

TEST(Transmute, RateFrequency) {
  NBestSource src(lists(1));
  hal::Rng rng(2);
  int hits = 0;
  for (int i = 0; i < 10000; ++i) hits += hal::augment::transmute("u0", "the cat sat", src, 0.25, rng).has_value();
  EXPECT_NEAR(hits / 10000.0, 0.25, 0.015);
}

TEST(Transmute, MissingHypothesesThrow) {
  NBestSource src(lists(1));
  hal::Rng rng(3);
  EXPECT_THROW(hal::augment::transmute("nope", "x", src, 1.0, rng), std::invalid_argument);
  EXPECT_FALSE(hal::augment::transmute("nope", "x", src, 0.0, rng).has_value());
}

TEST(AugmentCorpus, EpochViews) {
  const auto c = corpus(200);
  NBestSource src(lists(200));
  AugmentPolicy p;
  p.rate = 1.0;
  p.seed = 5;
  const auto a = hal::augment::augment_corpus(c, src, p, 1);
  EXPECT_EQ(a.lines, hal::augment::augment_corpus(c, src, p, 2).lines);
  p.resample_each_epoch = true;
  // Four equally likely alternatives per line: all 200 equal has probability 4^-200.
  const auto b1 = hal::augment::augment_corpus(c, src, p, 1);
  const auto b2 = hal::augment::augment_corpus(c, src, p, 2);
  EXPECT_NE(b1.lines, b2.lines);
  EXPECT_EQ(b1.lines, hal::augment::augment_corpus(c, src, p, 1).lines);
  const auto empty = hal::augment::augment_corpus({}, src, p, 1);
  EXPECT_TRUE(empty.lines.empty());
  p.rate = -0.1;
  EXPECT_THROW(hal::augment::augment_corpus(c, src, p, 1), std::invalid_argument);
}

TEST(AugmentCorpus, UntouchedLinesAreVerbatimAndSidecarMarksReplacements) {
  auto c = hal::text::parse_corpus("a\tThe Cat,  sat\tthe hat sat\nb\tdog ran\nc\tthe  mat\tthe map\n");
  NBestSource src(lists(0));
  AugmentPolicy p;
  p.rate = 0.0;
  const auto view = hal::augment::augment_corpus(c, src, p);
  EXPECT_EQ(hal::augment::format_lines(view.lines),
            "a\tThe Cat,  sat\tthe hat sat\nb\tdog ran\nc\tthe  mat\tthe map\n");
  EXPECT_EQ(hal::augment::format_sidecar(c, view), "a\t0\nb\t0\nc\t0\n");

  std::vector<hal::decode::NBestList> one{{"b", {{hal::split_ws("fog ran"), -0.5}}}};
  NBestSource src_b(one);
  p.rate = 1.0;
  EXPECT_THROW(hal::augment::augment_corpus(c, src_b, p), std::invalid_argument);
  c = hal::text::parse_corpus("b\tdog ran\n");
  const auto v2 = hal::augment::augment_corpus(c, src_b, p);
  EXPECT_EQ(hal::augment::format_lines(v2.lines), "b\tdog ran\tfog ran\n");
  EXPECT_EQ(hal::augment::format_sidecar(c, v2), "b\t1\n");
}

TEST(ModelSource, DrawsFromTheTargetVocabulary) {
  const auto ck = tiny_checkpoint();
  hal::augment::ModelSource src(ck, nullptr, nullptr);
  const auto tgt = hal::text::Vocab::parse(ck.vocab("tgt").contents);
  hal::Rng rng(7);
  std::set<std::string> outputs;
  for (int i = 0; i < 50; ++i) {
    const auto words = src.draw("x", "The cat sat on the mat", rng);
    EXPECT_LE(words.size(), hal::decode::default_max_len(6));
    for (const auto& word : words) {
      EXPECT_TRUE(tgt.contains(word)) << word;
      EXPECT_NE(word, "<pad>");
      EXPECT_NE(word, "<s>");
    }
    outputs.insert(hal::join(words, " "));
  }
  EXPECT_GT(outputs.size(), 10u);
  hal::Rng r1(9), r2(9);
  EXPECT_EQ(src.draw("x", "the cat", r1), src.draw("x", "the cat", r2));
  EXPECT_THROW(src.draw("x", "", rng), std::invalid_argument);

  auto dual = ck;
  dual.config = fixtures::tiny_config(hal::model::ModelMode::dual);
  dual.params = hal::model::init_params<float>(dual.config, 4);
  EXPECT_THROW(hal::augment::ModelSource(dual, nullptr, nullptr), std::invalid_argument);
}
