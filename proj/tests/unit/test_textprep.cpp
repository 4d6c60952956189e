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

#include "hal/text/corpus.hpp"
#include "hal/text/lexicon.hpp"
#include "hal/text/tokenize.hpp"
#include "hal/text/vocab.hpp"
#include "hal/util/hash.hpp"
#include "support/fixtures.hpp"

using hal::text::Lexicon;
using hal::text::Phones;
using hal::text::TableG2P;
using hal::text::Vocab;
using hal::text::Words;

TEST(Tokenize, BasicSentences) {
  EXPECT_EQ(hal::text::tokenize("Do you take Tylenol?"), (Words{"do", "you", "take", "tylenol"}));
  EXPECT_EQ(hal::text::tokenize(""), Words{});
  EXPECT_EQ(hal::text::tokenize("don't  STOP."), (Words{"don't", "stop"}));
  EXPECT_EQ(hal::text::tokenize("  \t ... !! "), Words{});
}

TEST(Tokenize, Apostrophes) {
  EXPECT_EQ(hal::text::tokenize("don’t"), Words{"don't"});
  EXPECT_EQ(hal::text::tokenize("'quoted' rock'n'roll"), (Words{"quoted", "rock'n'roll"}));
  EXPECT_EQ(hal::text::tokenize("''' '"), Words{});
}

TEST(Tokenize, UnicodeLowercaseAndPunctuation) {
  EXPECT_EQ(hal::text::tokenize("ÉCOLE Ωmega"), (Words{"école", "ωmega"}));
  EXPECT_EQ(hal::text::tokenize("“yes” … no¿"), (Words{"yes", "no"}));
  EXPECT_EQ(hal::text::tokenize("U.S.A."), Words{"usa"});
}

TEST(Tokenize, Idempotent) {
  for (const char* s : {"Do you take Tylenol?", "don't  STOP.", "ÉCOLE, ‘quoted’", "a-b c_d"}) {
    const auto once = hal::text::tokenize(s);
    std::string joined;
    for (const auto& w : once) joined += w + " ";
    EXPECT_EQ(hal::text::tokenize(joined), once) << s;
  }
}

TEST(Tokenize, SpecialTokens) {
  EXPECT_TRUE(hal::text::is_special_token("[laughter]"));
  EXPECT_TRUE(hal::text::is_special_token("<unk>"));
  EXPECT_TRUE(hal::text::is_special_token("{lipsmack}"));
  EXPECT_FALSE(hal::text::is_special_token("[]"));
  EXPECT_FALSE(hal::text::is_special_token("yes"));
  EXPECT_EQ(hal::text::prepare_text("[laughter] yes <unk> {lipsmack} no"), (Words{"yes", "no"}));
  EXPECT_EQ(hal::text::prepare_text("[noise]"), Words{});
}

TEST(Lexicon, LookupAndConcatenation) {
  const auto lex = Lexicon::load(fixtures::data_path("lexicon.tsv"));
  const TableG2P g2p;
  EXPECT_EQ(hal::text::phonemize({"cat"}, lex, g2p), (Phones{"k", "ae", "t"}));
  EXPECT_EQ(hal::text::phonemize({"cat", "cat"}, lex, g2p), (Phones{"k", "ae", "t", "k", "ae", "t"}));
  // first variant wins
  EXPECT_EQ(hal::text::phonemize({"the"}, lex, g2p), (Phones{"dh", "ah"}));
  ASSERT_NE(lex.find("the"), nullptr);
  EXPECT_EQ(lex.find("the")->size(), 2u);
  EXPECT_EQ(lex.find("zebra"), nullptr);
  EXPECT_TRUE(lex.inventory().count("dh"));
}

TEST(Lexicon, FallbackIsDeterministic) {
  const Lexicon lex;
  const TableG2P g2p;
  const auto a = hal::text::phonemize({"zzyq"}, lex, g2p);
  EXPECT_EQ(a, (Phones{"z", "y", "k"}));
  EXPECT_EQ(hal::text::phonemize({"zzyq"}, lex, g2p), a);
  EXPECT_EQ(g2p.pronounce("knight"), (Phones{"n", "ay", "t"}));
  EXPECT_EQ(g2p.pronounce("tell"), (Phones{"t", "eh", "l"}));
  EXPECT_TRUE(g2p.pronounce("ω").empty());
  EXPECT_THROW(hal::text::phonemize({"ω"}, lex, g2p), std::invalid_argument);
}

TEST(Lexicon, MalformedEntries) {
  EXPECT_THROW(Lexicon::parse("cat\n"), std::invalid_argument);
  EXPECT_THROW(Lexicon::parse("cat\t  \n"), std::invalid_argument);
  EXPECT_EQ(Lexicon::parse("# c\n\ncat\tk ae t\n").size(), 1u);
}

TEST(Corpus, ParseAndFormat) {
  const auto recs = hal::text::parse_corpus("a\tHello there\thello their\r\nb\tyes\n\n");
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].recognized_text.value(), "hello their");
  EXPECT_FALSE(recs[1].recognized_text.has_value());
  EXPECT_EQ(recs[1].raw, "b\tyes");
  EXPECT_EQ(hal::text::format_corpus(recs), "a\tHello there\thello their\nb\tyes\n");
  EXPECT_THROW(hal::text::parse_corpus("a\tx\na\ty\n"), std::invalid_argument);
  EXPECT_THROW(hal::text::parse_corpus("lonely\n"), std::invalid_argument);
  EXPECT_THROW(hal::text::parse_corpus("a\tb\tc\td\n"), std::invalid_argument);
  EXPECT_THROW(hal::text::parse_corpus("\tb\n"), std::invalid_argument);
}

TEST(Corpus, FilterDropsDegeneratePairs) {
  const auto lex = Lexicon::load(fixtures::data_path("lexicon.tsv"));
  const TableG2P g2p;
  const auto laughter = hal::text::prepare_pair({"1", "[laughter]", "ha", ""}, lex, g2p);
  const auto yes = hal::text::prepare_pair({"2", "yes", "yeah", ""}, lex, g2p);
  const auto greek = hal::text::prepare_pair({"3", "ω", "oh", ""}, lex, g2p);
  hal::text::FilterReport report;
  const auto kept = hal::text::filter_pairs({laughter, yes, greek}, &report);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].id, "2");
  EXPECT_EQ(report.removed, 2u);
}

TEST(Corpus, FilterReportPercentage) {
  const auto lex = Lexicon::load(fixtures::data_path("lexicon.tsv"));
  const TableG2P g2p;
  std::vector<hal::text::UtterancePair> pairs;
  for (int i = 0; i < 1000; ++i)
    pairs.push_back(hal::text::prepare_pair({std::to_string(i), i < 22 ? "[noise] ..." : "the cat sat", "x", ""}, lex, g2p));
  hal::text::FilterReport report;
  EXPECT_EQ(hal::text::filter_pairs(pairs, &report).size(), 978u);
  EXPECT_DOUBLE_EQ(report.removed_percent(), 2.2);
}

TEST(Corpus, ToRecordJoinsPreparedWords) {
  const auto lex = Lexicon::load(fixtures::data_path("lexicon.tsv"));
  const auto p = hal::text::prepare_pair({"u", "The Cat!", "the hat", ""}, lex, TableG2P());
  const auto r = hal::text::to_record(p);
  EXPECT_EQ(hal::text::format_record(r), "u\tthe cat\tthe hat");
  EXPECT_EQ(p.true_phones, (Phones{"dh", "ah", "k", "ae", "t"}));
}

TEST(Vocab, BuildAndMinCount) {
  const std::vector<Words> corpus{{"a", "a", "b"}};
  const auto v = Vocab::build(corpus, 1);
  EXPECT_EQ(v.size(), 6u);
  EXPECT_EQ(v.encode("a"), 4u);
  EXPECT_EQ(v.encode("b"), 5u);
  const auto v2 = Vocab::build(corpus, 2);
  EXPECT_EQ(v2.encode("b"), Vocab::kUnk);
  EXPECT_EQ(Vocab::build(corpus, 1), v);
  EXPECT_EQ(v.decode(Vocab::kEos), "</s>");
  EXPECT_THROW(v.decode(99), std::out_of_range);
  EXPECT_THROW(Vocab::build({{}}), std::invalid_argument);
}

TEST(Vocab, TiesAreBytewise) {
  const auto v = Vocab::build({{"zeta", "alpha", "mid", "mid"}});
  EXPECT_EQ(v.tokens(), (std::vector<std::string>{"<pad>", "<s>", "</s>", "<unk>", "mid", "alpha", "zeta"}));
}

TEST(Vocab, SerializeRoundTripAndHash) {
  const auto v = Vocab::build({{"x", "y", "y"}});
  const auto back = Vocab::parse(v.serialize());
  EXPECT_EQ(back, v);
  EXPECT_EQ(back.content_hash(), v.content_hash());
  EXPECT_EQ(v.content_hash(), hal::fnv1a64(v.serialize()));
  EXPECT_NE(Vocab::build({{"x"}}).content_hash(), v.content_hash());
  EXPECT_THROW(Vocab::parse("a\nb\n"), std::invalid_argument);
}
