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

#include "hal/train/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "hal/num/nesterov.hpp"
#include "hal/util/rng.hpp"

namespace hal::train {

std::size_t Example::cost() const { return std::max(src.words.size(), target.size() + 1); }

std::vector<Example> encode_examples(const std::vector<text::UtterancePair>& pairs, const text::Vocab& src,
                                     const text::Vocab& tgt, const text::Vocab* phones) {
  std::vector<Example> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (!p.has_recognized) throw std::invalid_argument("pair '" + p.id + "' has no recognized text");
    Example e;
    e.id = p.id;
    e.src.words = src.encode(p.true_words);
    if (phones) e.src.phones = phones->encode(p.true_phones);
    e.target = tgt.encode(p.recognized_words);
    out.push_back(std::move(e));
  }
  return out;
}

void TrainPlan::validate() const {
  if (!(lr >= 0.0)) throw std::invalid_argument("train plan: lr must be >= 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw std::invalid_argument("train plan: momentum must be in [0, 1)");
  if (batch_tokens == 0) throw std::invalid_argument("train plan: batch_tokens must be > 0");
  if (!(clip_norm >= 0.0)) throw std::invalid_argument("train plan: clip_norm must be >= 0");
}

std::string format_epoch(const EpochLog& e) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu\t%.6f\t%.6f", e.epoch, e.train_loss, e.valid_loss);
  return buf;
}

std::vector<std::vector<std::size_t>> make_batches(const std::vector<Example>& examples, std::size_t batch_tokens,
                                                   std::uint64_t seed, std::size_t epoch) {
  Rng rng(derive_seed(seed, epoch, 0xba7c));
  std::vector<std::uint64_t> key(examples.size());
  for (auto& k : key) k = rng.next();
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i : order) {
    if (examples[i].cost() > batch_tokens)
      throw std::invalid_argument("example '" + examples[i].id + "' needs " + std::to_string(examples[i].cost()) +
                                  " tokens, more than batch_tokens " + std::to_string(batch_tokens));
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const std::size_t ca = examples[a].cost(), cb = examples[b].cost();
    if (ca != cb) return ca < cb;
    if (key[a] != key[b]) return key[a] < key[b];
    return a < b;
  });
  std::vector<std::vector<std::size_t>> batches;
  std::size_t used = 0;
  for (std::size_t i : order) {
    const std::size_t c = examples[i].cost();
    if (batches.empty() || used + c > batch_tokens) {
      batches.emplace_back();
      used = 0;
    }
    batches.back().push_back(i);
    used += c;
  }
  for (std::size_t i = batches.size(); i > 1; --i) std::swap(batches[i - 1], batches[rng.below(i)]);
  return batches;
}

double evaluate_loss(const model::ModelConfig& cfg, const num::ParamSet<float>& params,
                     const std::vector<Example>& examples) {
  if (examples.empty()) throw std::invalid_argument("evaluate_loss: no examples");
  double total = 0.0;
  std::size_t tokens = 0;
  for (const auto& e : examples) {
    num::Graph<float> g;
    model::Forward<float> f(g, cfg, params, nullptr);
    const auto parts = model::forward_loss_sum(f, e.src, e.target);
    total += static_cast<double>(g.value(parts.loss_sum).item());
    tokens += parts.tokens;
  }
  return total / static_cast<double>(tokens);
}

namespace {

TrainResult run(Checkpoint ck, const std::vector<Example>& train_set, const std::vector<Example>& valid_set,
                const TrainPlan& plan, const EpochCallback& on_epoch) {
  plan.validate();
  if (train_set.empty()) throw std::invalid_argument("training set is empty");
  if (valid_set.empty()) throw std::invalid_argument("validation set is empty");
  const model::ModelConfig& cfg = ck.config;
  ck.optimizer.lr = static_cast<float>(plan.lr);
  ck.optimizer.momentum = static_cast<float>(plan.momentum);
  if (ck.optimizer.velocity.size() != ck.params.size()) {
    ck.optimizer = num::NesterovState<float>(ck.params, static_cast<float>(plan.lr), static_cast<float>(plan.momentum));
  }
  for (const auto& e : train_set) model::check_source(cfg, e.src);

  TrainResult result;
  Checkpoint best = ck;
  std::size_t since_best = 0;
  num::GradStore<float> grads(ck.params);
  const std::size_t first_epoch = static_cast<std::size_t>(ck.epoch) + 1;
  for (std::size_t ep = 0; ep < plan.epochs; ++ep) {
    const std::size_t epoch = first_epoch + ep;
    const Checkpoint last_good = ck;
    double epoch_loss = 0.0;
    std::size_t epoch_tokens = 0;
    try {
      for (const auto& batch : make_batches(train_set, plan.batch_tokens, plan.seed, epoch)) {
        std::size_t tokens = 0;
        for (std::size_t i : batch) tokens += train_set[i].target.size() + 1;
        grads.zero();
        const float seed = 1.0f / static_cast<float>(tokens);
        for (std::size_t i : batch) {
          Rng rng(derive_seed(plan.seed, epoch, i));
          num::Graph<float> g;
          model::Forward<float> f(g, cfg, ck.params, &rng);
          const auto parts = model::forward_loss_sum(f, train_set[i].src, train_set[i].target);
          epoch_loss += static_cast<double>(g.value(parts.loss_sum).item());
          g.backward(parts.loss_sum, seed);
          g.accumulate_param_grads(grads);
        }
        epoch_tokens += tokens;
        if (plan.clip_norm > 0.0) {
          const double norm = grads.norm();
          if (norm > plan.clip_norm) grads.scale(static_cast<float>(plan.clip_norm / norm));
        }
        num::nesterov_step(ck.params, grads, ck.optimizer);
      }
    } catch (const num::NumericError& e) {
      throw DivergenceError(std::string("training diverged in epoch ") + std::to_string(epoch) + ": " + e.what(),
                            last_good);
    }
    EpochLog log{epoch, epoch_loss / static_cast<double>(epoch_tokens), 0.0};
    if (!std::isfinite(log.train_loss))
      throw DivergenceError("training loss is not finite in epoch " + std::to_string(epoch), last_good);
    try {
      log.valid_loss = evaluate_loss(cfg, ck.params, valid_set);
    } catch (const num::NumericError& e) {
      throw DivergenceError(std::string("validation diverged in epoch ") + std::to_string(epoch) + ": " + e.what(),
                            last_good);
    }
    ck.epoch = epoch;
    result.log.push_back(log);
    if (on_epoch) on_epoch(log);
    if (log.valid_loss < ck.best_valid) {
      ck.best_valid = log.valid_loss;
      best = ck;
      since_best = 0;
    } else {
      ++since_best;
    }
    if (plan.patience > 0 && since_best >= plan.patience) break;
  }
  best.best_valid = ck.best_valid;
  result.best = std::move(best);
  result.last = std::move(ck);
  return result;
}

}  // namespace

TrainResult train(const Checkpoint& start, const std::vector<Example>& train_set,
                  const std::vector<Example>& valid_set, const TrainPlan& plan, const EpochCallback& on_epoch) {
  return run(start, train_set, valid_set, plan, on_epoch);
}

TrainResult finetune(const Checkpoint& base, const std::vector<Example>& train_set,
                     const std::vector<Example>& valid_set, const TrainPlan& plan, const EpochCallback& on_epoch) {
  if (plan.epochs == 0) return {base, base, {}};
  Checkpoint start = base;
  start.optimizer = num::NesterovState<float>(start.params, static_cast<float>(plan.lr), static_cast<float>(plan.momentum));
  // Selection restarts on the new data: the base's loss was measured elsewhere.
  start.best_valid = std::numeric_limits<double>::infinity();
  return run(start, train_set, valid_set, plan, on_epoch);
}

void check_vocab_compat(const Checkpoint& base, const std::vector<model::VocabRef>& data_vocabs, bool remap) {
  for (const auto& dv : data_vocabs) {
    const auto& bv = base.vocab(dv.role);
    if (bv.hash != dv.hash && !remap)
      throw std::invalid_argument("the '" + dv.role + "' vocabulary differs from the base checkpoint's; rerun with "
                                  "the remap flag to map unknown words to <unk>");
  }
}

}  // namespace hal::train
