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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hal/decode/nbest.hpp"
#include "hal/model/checkpoint.hpp"
#include "hal/model/session.hpp"
#include "hal/text/corpus.hpp"
#include "hal/text/lexicon.hpp"
#include "hal/util/rng.hpp"

namespace hal::augment {

using text::Words;

struct AugmentPolicy {
  double rate = 0.25;
  /// Draw a fresh alternative every epoch instead of one per example.
  bool resample_each_epoch = false;
  std::uint64_t seed = 1;
  void validate() const;
};

/// Supplies errorful alternatives for a clean text.
class HypothesisSource {
 public:
  virtual ~HypothesisSource() = default;
  /// One alternative for the example \p id with clean text \p true_text.
  /// Throws std::invalid_argument when none is available.
  virtual Words draw(const std::string& id, const std::string& true_text, Rng& rng) = 0;
};

/// One ancestral sample from a hallucination model per call.
class ModelSource final : public HypothesisSource {
 public:
  /// \p lexicon and \p g2p are needed for a dual model; both must outlive
  /// the source.
  ModelSource(const model::Checkpoint& ck, const text::Lexicon* lexicon, const text::G2P* g2p);
  Words draw(const std::string& id, const std::string& true_text, Rng& rng) override;

 private:
  model::ModelConfig cfg_;
  num::ParamSet<float> params_;
  std::unique_ptr<model::DecoderWeights> weights_;
  text::Vocab src_, tgt_, phones_;
  const text::Lexicon* lexicon_;
  const text::G2P* g2p_;
};

/// Uniform draw over a precomputed N-best list.
class NBestSource final : public HypothesisSource {
 public:
  explicit NBestSource(std::vector<decode::NBestList> lists);
  Words draw(const std::string& id, const std::string& true_text, Rng& rng) override;

 private:
  std::vector<decode::NBestList> lists_;
  std::map<std::string, const decode::NBestList*> index_;
};

/// With probability \p rate an alternative from \p source, else nothing.
/// The coin is the first draw from \p rng.
std::optional<Words> transmute(const std::string& id, const std::string& true_text, HypothesisSource& source,
                               double rate, Rng& rng);

struct AugmentedCorpus {
  /// Output lines without newlines: untouched lines verbatim, replaced ones
  /// as id<TAB>true_text<TAB>alternative.
  std::vector<std::string> lines;
  std::vector<bool> replaced;
};

/// One epoch view. Example i uses the stream (seed, epoch, i) when
/// resampling and (seed, 0, i) otherwise, so views without resampling are
/// identical.
AugmentedCorpus augment_corpus(const std::vector<text::CorpusRecord>& corpus, HypothesisSource& source,
                               const AugmentPolicy& policy, std::size_t epoch = 0);

std::string format_lines(const std::vector<std::string>& lines);
/// "id<TAB>0|1" per example.
std::string format_sidecar(const std::vector<text::CorpusRecord>& corpus, const AugmentedCorpus& view);

}  // namespace hal::augment
