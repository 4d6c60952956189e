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
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hal/decode/step_model.hpp"
#include "hal/text/corpus.hpp"
#include "hal/util/rng.hpp"

namespace hal::synth {

using text::Words;

/// A small noisy channel whose output distribution can be enumerated.
///
/// Spec lines (blank lines and '#' comments ignored):
///   VOCAB w1 w2 ...           source words, drawn uniformly (WORDS is a synonym)
///   LENGTH min max            source length, drawn uniformly
///   MAXOUT n                  reject sources with more than n distinct outputs
///   SUB src->dst p            replace src by dst ('+' joins several words)
///   DEL tok p                 drop tok
///   CSUB left src->dst p      replace src by dst when the previous source word is left
///   INS tok p                 insert tok after any source word
/// The arrow may also be written as the Unicode arrow. Each source word is
/// rewritten left to right: the matching CSUB, SUB and DEL rules are
/// mutually exclusive outcomes and the word is kept with the remaining
/// probability. Then at most one INS fires, rule k with probability p_k.
class Channel {
 public:
  static Channel parse(std::string_view spec);
  static Channel load(const std::string& path);

  const Words& vocab() const noexcept { return vocab_; }
  std::size_t min_length() const noexcept { return min_len_; }
  std::size_t max_length() const noexcept { return max_len_; }
  std::size_t max_outputs() const noexcept { return max_out_; }

  Words sample_source(Rng& rng) const;
  Words corrupt(const Words& source, Rng& rng) const;

  /// Every distinct output with its probability, by descending probability
  /// then lexicographically. Throws std::length_error beyond \p limit outputs.
  std::vector<std::pair<Words, double>> enumerate(const Words& source, std::size_t limit = 200000) const;

  /// Words the channel can emit for any source.
  Words output_words() const;

 private:
  struct Outcome {
    Words words;
    double p;
  };
  std::vector<Outcome> word_outcomes(const std::string* left, const std::string& word) const;

  Words vocab_;
  std::size_t min_len_ = 1, max_len_ = 1, max_out_ = 0;
  std::multimap<std::string, Outcome> sub_;                        // src -> outcome
  std::map<std::pair<std::string, std::string>, std::vector<Outcome>> csub_;  // (left, src)
  std::vector<Outcome> ins_;
};

/// n pairs "<prefix><index>\tsource\toutput". Sources exceeding MAXOUT are
/// redrawn. Pair i depends only on (seed, i).
std::vector<text::CorpusRecord> synthesize(const Channel& channel, std::size_t n, std::uint64_t seed,
                                           const std::string& id_prefix = "s");

/// Next-token model of an explicit distribution over token sequences, via a
/// prefix trie. Sequences must not contain EOS; probabilities need not be
/// normalised.
class DistributionModel final : public decode::StepModel {
 public:
  DistributionModel(const std::vector<std::pair<std::vector<text::Token>, double>>& dist, std::size_t vocab,
                    text::Token eos);

  std::size_t vocab_size() const override { return vocab_; }
  text::Token eos() const override { return eos_; }
  void start(std::size_t rows) override { rows_.assign(rows, 0); }
  std::size_t rows() const override { return rows_.size(); }
  void log_probs(std::vector<double>& out) override;
  void advance(std::span<const std::size_t> parents, std::span<const text::Token> tokens) override;

 private:
  struct Node {
    std::map<text::Token, std::size_t> children;
    double mass = 0.0;
    double end = 0.0;
  };
  std::vector<Node> nodes_;
  std::vector<std::size_t> rows_;
  std::size_t vocab_;
  text::Token eos_;
};

}  // namespace hal::synth
