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

#include "hal/decode/beam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hal::decode {

std::size_t default_max_len(std::size_t source_length) { return 2 * source_length + 5; }

namespace {

struct Running {
  std::vector<Token> tokens;
  double logp = 0.0;
};

struct Candidate {
  double logp;
  std::size_t row;
  Token token;
};

}  // namespace

std::vector<Hypothesis> beam_search(StepModel& model, const BeamOptions& opts) {
  if (opts.k == 0 || opts.beam < opts.k) throw std::invalid_argument("beam search needs 1 <= k <= beam");
  if (opts.max_len == 0) throw std::invalid_argument("beam search needs max_len >= 1");
  const std::size_t vocab = model.vocab_size();
  const Token eos = model.eos();

  std::vector<Running> active(1);
  std::vector<Hypothesis> done;  // score holds the normalised log-probability
  model.start(1);
  std::vector<double> lp;
  std::vector<Candidate> cands;
  for (std::size_t step = 1; step <= opts.max_len && !active.empty(); ++step) {
    model.log_probs(lp);
    cands.clear();
    for (std::size_t r = 0; r < active.size(); ++r) {
      for (Token v = 0; v < vocab; ++v) {
        const double l = lp[r * vocab + v];
        if (l == -INFINITY) continue;
        cands.push_back({active[r].logp + l, r, v});
      }
    }
    const std::size_t keep = std::min(opts.beam, cands.size());
    auto better = [](const Candidate& a, const Candidate& b) {
      if (a.logp != b.logp) return a.logp > b.logp;
      if (a.row != b.row) return a.row < b.row;
      return a.token < b.token;
    };
    std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(keep), cands.end(), better);

    std::vector<Running> next;
    std::vector<std::size_t> parents;
    std::vector<Token> tokens;
    for (std::size_t i = 0; i < keep; ++i) {
      const Candidate& c = cands[i];
      if (c.token == eos) {
        done.push_back({active[c.row].tokens, c.logp / static_cast<double>(step)});
        continue;
      }
      Running r{active[c.row].tokens, c.logp};
      r.tokens.push_back(c.token);
      if (step == opts.max_len) {
        done.push_back({std::move(r.tokens), c.logp / static_cast<double>(step)});
        continue;
      }
      parents.push_back(c.row);
      tokens.push_back(c.token);
      next.push_back(std::move(r));
    }
    active = std::move(next);
    if (!active.empty()) model.advance(parents, tokens);
  }
  std::sort(done.begin(), done.end(), [](const Hypothesis& a, const Hypothesis& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.tokens < b.tokens;
  });
  if (done.size() > opts.k) done.resize(opts.k);
  return done;
}

}  // namespace hal::decode
