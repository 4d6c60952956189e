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
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hal/model/checkpoint.hpp"
#include "hal/model/network.hpp"
#include "hal/text/corpus.hpp"
#include "hal/text/vocab.hpp"

namespace hal::train {

using model::Checkpoint;
using model::SourceTokens;
using text::Token;

/// One encoded training pair. \p target excludes EOS.
struct Example {
  std::string id;
  SourceTokens src;
  std::vector<Token> target;
  /// Token budget the example occupies: max(|source|, |target| + 1).
  std::size_t cost() const;
};

/// Encodes prepared pairs. Pairs without a recognized side are rejected.
std::vector<Example> encode_examples(const std::vector<text::UtterancePair>& pairs, const text::Vocab& src,
                                     const text::Vocab& tgt, const text::Vocab* phones);

struct TrainPlan {
  std::size_t epochs = 60;
  double lr = 0.1;
  double momentum = 0.99;
  std::size_t batch_tokens = 4000;
  /// Rescale the batch gradient to this norm when it is larger; 0 disables.
  double clip_norm = 0.1;
  std::uint64_t seed = 1;
  /// Stop after this many epochs without a better validation loss; 0 disables.
  std::size_t patience = 10;

  void validate() const;
};

struct EpochLog {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double valid_loss = 0.0;
};

/// "epoch<TAB>train_loss<TAB>valid_loss".
std::string format_epoch(const EpochLog& e);

struct TrainResult {
  /// Lowest validation loss seen (the starting point counts as epoch 0 when
  /// it has already been evaluated).
  Checkpoint best;
  Checkpoint last;
  std::vector<EpochLog> log;
};

/// Raised when a loss or gradient turns non-finite. Carries the checkpoint
/// from the end of the last completed epoch.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, Checkpoint last_good)
      : std::runtime_error(what), last_good_(std::move(last_good)) {}
  const Checkpoint& last_good() const noexcept { return last_good_; }

 private:
  Checkpoint last_good_;
};

using EpochCallback = std::function<void(const EpochLog&)>;

/// Batches of example indices for one epoch: examples are ordered by cost
/// (ties broken by a per-epoch random key), packed greedily under the token
/// budget, and the batch order is shuffled from (seed, epoch). Throws
/// std::invalid_argument when one example exceeds the budget.
std::vector<std::vector<std::size_t>> make_batches(const std::vector<Example>& examples,
                                                   std::size_t batch_tokens, std::uint64_t seed,
                                                   std::size_t epoch);

/// Eval-mode loss summed over tokens and divided by the token count.
double evaluate_loss(const model::ModelConfig& cfg, const num::ParamSet<float>& params,
                     const std::vector<Example>& examples);

/// Optimises \p start on \p train for plan.epochs epochs with a Nesterov
/// optimizer whose velocity is taken from \p start when present (zeroed
/// otherwise). Each epoch ends with a validation pass.
TrainResult train(const Checkpoint& start, const std::vector<Example>& train_set,
                  const std::vector<Example>& valid_set, const TrainPlan& plan,
                  const EpochCallback& on_epoch = {});

/// Continues from \p base on new data with a zeroed velocity. Zero epochs
/// return \p base unchanged.
TrainResult finetune(const Checkpoint& base, const std::vector<Example>& train_set,
                     const std::vector<Example>& valid_set, const TrainPlan& plan,
                     const EpochCallback& on_epoch = {});

/// Throws std::invalid_argument when the vocabularies a finetune corpus was
/// prepared with differ from the base checkpoint's and \p remap is false.
void check_vocab_compat(const Checkpoint& base, const std::vector<model::VocabRef>& data_vocabs, bool remap);

}  // namespace hal::train
