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

#include "hal/augment/augment.hpp"

#include <algorithm>
#include <stdexcept>

#include "hal/decode/beam.hpp"
#include "hal/decode/sampler.hpp"
#include "hal/util/io.hpp"

namespace hal::augment {

void AugmentPolicy::validate() const {
  if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("augment rate must be in [0, 1]");
}

ModelSource::ModelSource(const model::Checkpoint& ck, const text::Lexicon* lexicon, const text::G2P* g2p)
    : cfg_(ck.config),
      params_(ck.params),
      src_(text::Vocab::parse(ck.vocab("src").contents)),
      tgt_(text::Vocab::parse(ck.vocab("tgt").contents)),
      lexicon_(lexicon),
      g2p_(g2p) {
  if (cfg_.dual()) {
    if (!lexicon_ || !g2p_) throw std::invalid_argument("a dual model needs a lexicon and G2P fallback");
    phones_ = text::Vocab::parse(ck.vocab("phone").contents);
  }
  weights_ = std::make_unique<model::DecoderWeights>(cfg_, params_);
}

Words ModelSource::draw(const std::string& id, const std::string& true_text, Rng& rng) {
  const Words words = text::prepare_text(true_text);
  if (words.empty()) throw std::invalid_argument("example '" + id + "' has no words to transmute");
  model::SourceTokens src;
  src.words = src_.encode(words);
  if (cfg_.dual()) src.phones = phones_.encode(text::phonemize(words, *lexicon_, *g2p_));
  model::DecoderSession session(*weights_, src);
  const std::size_t max_len = std::min(decode::default_max_len(words.size()), cfg_.max_positions);
  auto samples = decode::draw_samples(session, 1, max_len, rng.next());
  return tgt_.decode(samples.front());
}

NBestSource::NBestSource(std::vector<decode::NBestList> lists) : lists_(std::move(lists)) {
  index_ = decode::index_nbest(lists_);
}

Words NBestSource::draw(const std::string& id, const std::string& true_text, Rng& rng) {
  auto it = index_.find(id);
  if (it == index_.end() || it->second->entries.empty())
    throw std::invalid_argument("no hypotheses for example '" + id + "'");
  const auto& entries = it->second->entries;
  return entries[rng.below(entries.size())].words;
}

std::optional<Words> transmute(const std::string& id, const std::string& true_text, HypothesisSource& source,
                               double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("augment rate must be in [0, 1]");
  if (!(rng.uniform() < rate)) return std::nullopt;
  return source.draw(id, true_text, rng);
}

AugmentedCorpus augment_corpus(const std::vector<text::CorpusRecord>& corpus, HypothesisSource& source,
                               const AugmentPolicy& policy, std::size_t epoch) {
  policy.validate();
  AugmentedCorpus out;
  out.lines.reserve(corpus.size());
  out.replaced.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& r = corpus[i];
    Rng rng(derive_seed(policy.seed, policy.resample_each_epoch ? epoch : 0, i));
    auto alt = transmute(r.id, r.true_text, source, policy.rate, rng);
    if (alt) {
      out.lines.push_back(r.id + '\t' + r.true_text + '\t' + join(*alt, " "));
    } else {
      out.lines.push_back(r.raw.empty() ? text::format_record(r) : r.raw);
    }
    out.replaced.push_back(alt.has_value());
  }
  return out;
}

std::string format_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

std::string format_sidecar(const std::vector<text::CorpusRecord>& corpus, const AugmentedCorpus& view) {
  std::string out;
  for (std::size_t i = 0; i < corpus.size(); ++i) out += corpus[i].id + '\t' + (view.replaced[i] ? "1\n" : "0\n");
  return out;
}

}  // namespace hal::augment
