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

#include "hal/decode/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "hal/util/rng.hpp"

namespace hal::decode {

std::vector<std::vector<Token>> draw_samples(StepModel& model, std::size_t n, std::size_t max_len,
                                             std::uint64_t seed, std::size_t first_index, std::size_t chunk) {
  if (max_len == 0) throw std::invalid_argument("sampling needs max_len >= 1");
  if (chunk == 0) chunk = 1;
  const std::size_t vocab = model.vocab_size();
  const Token eos = model.eos();
  std::vector<std::vector<Token>> out(n);
  std::vector<double> lp, probs(vocab);
  for (std::size_t base = 0; base < n; base += chunk) {
    const std::size_t rows = std::min(chunk, n - base);
    std::vector<Rng> rngs;
    std::vector<std::size_t> owner(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      rngs.emplace_back(derive_seed(seed, first_index + base + r));
      owner[r] = base + r;
    }
    model.start(rows);
    for (std::size_t step = 1; step <= max_len && !owner.empty(); ++step) {
      model.log_probs(lp);
      std::vector<std::size_t> parents, next_owner;
      std::vector<Token> tokens;
      for (std::size_t r = 0; r < owner.size(); ++r) {
        for (std::size_t v = 0; v < vocab; ++v) probs[v] = std::exp(lp[r * vocab + v]);
        const Token t = rngs[owner[r] - base].categorical(probs);
        if (t == eos) continue;
        out[owner[r]].push_back(t);
        if (step == max_len) continue;
        parents.push_back(r);
        tokens.push_back(t);
        next_owner.push_back(owner[r]);
      }
      owner = std::move(next_owner);
      if (!owner.empty()) model.advance(parents, tokens);
    }
  }
  return out;
}

std::vector<Hypothesis> sample_decode(StepModel& model, const SampleOptions& opts, std::uint64_t seed,
                                      SampleStats* stats) {
  if (opts.min_samples == 0 || opts.max_samples < opts.min_samples || opts.target_unique == 0)
    throw std::invalid_argument("sampling needs 1 <= min_samples <= max_samples and target_unique >= 1");

  struct Seen {
    std::size_t count = 0;
    std::size_t first = 0;
  };
  std::map<std::vector<Token>, Seen> seen;
  std::size_t drawn = 0;
  auto absorb = [&](std::vector<Token>&& s) {
    auto [it, fresh] = seen.try_emplace(std::move(s), Seen{0, drawn});
    ++it->second.count;
    ++drawn;
  };

  for (auto& s : draw_samples(model, opts.min_samples, opts.max_len, seed, 0, opts.chunk)) absorb(std::move(s));
  const bool more = opts.rule == StopRule::saturate ? seen.size() > opts.target_unique
                                                    : seen.size() < opts.target_unique;
  while (more && drawn < opts.max_samples) {
    const std::size_t batch = std::min(opts.chunk == 0 ? std::size_t{1} : opts.chunk, opts.max_samples - drawn);
    auto fresh = draw_samples(model, batch, opts.max_len, seed, drawn, opts.chunk);
    bool stop = false;
    for (auto& s : fresh) {
      absorb(std::move(s));
      if (opts.rule == StopRule::reach_unique && seen.size() >= opts.target_unique) {
        stop = true;
        break;
      }
    }
    if (stop) break;
  }

  std::vector<std::pair<const std::vector<Token>*, Seen>> ranked;
  for (const auto& [seq, s] : seen) ranked.push_back({&seq, s});
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second.count != b.second.count) return a.second.count > b.second.count;
    return a.second.first < b.second.first;
  });
  if (ranked.size() > opts.target_unique) ranked.resize(opts.target_unique);
  std::vector<Hypothesis> out;
  for (const auto& [seq, s] : ranked) out.push_back({*seq, static_cast<double>(s.count)});
  if (stats) {
    stats->drawn = drawn;
    stats->unique = seen.size();
  }
  return out;
}

}  // namespace hal::decode
