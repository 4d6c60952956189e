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

// Reference implementations written directly from the defining equations,
// shared by the unit tests and the acceptance runner. They trade speed for
// obviousness and never call into the library code they check.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hal/num/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;
using Words = std::vector<std::string>;

/// out[t][o] = b[o] + sum_c sum_w in[t + w - pad][c] * k[o][c][w], zero outside.
inline Matrix conv1d(const Matrix& in, const std::vector<Matrix>& k, bool causal,
                     const std::vector<double>* bias = nullptr) {
  const int steps = static_cast<int>(in.size());
  const int cout = static_cast<int>(k.size());
  const int cin = static_cast<int>(k[0].size());
  const int width = static_cast<int>(k[0][0].size());
  const int pad = causal ? width - 1 : (width - 1) / 2;
  Matrix out(static_cast<std::size_t>(steps), std::vector<double>(static_cast<std::size_t>(cout), 0.0));
  for (int t = 0; t < steps; ++t)
    for (int o = 0; o < cout; ++o) {
      double s = bias ? (*bias)[static_cast<std::size_t>(o)] : 0.0;
      for (int c = 0; c < cin; ++c)
        for (int w = 0; w < width; ++w) {
          const int src = t + w - pad;
          if (src < 0 || src >= steps) continue;
          s += in[static_cast<std::size_t>(src)][static_cast<std::size_t>(c)] *
               k[static_cast<std::size_t>(o)][static_cast<std::size_t>(c)][static_cast<std::size_t>(w)];
        }
      out[static_cast<std::size_t>(t)][static_cast<std::size_t>(o)] = s;
    }
  return out;
}

struct Attention {
  Matrix weights;  // m x n
  Matrix context;  // m x d
};

/// q_i = W p_i + b + g_i; a_ij = exp(q_i . k_j) / sum over unmasked j'; c_i = sum_j a_ij v_j.
inline Attention attention(const Matrix& p, const Matrix& g, const Matrix& keys, const Matrix& values,
                           const Matrix& w, const std::vector<double>& b, const std::vector<bool>& masked) {
  const std::size_t m = p.size(), n = keys.size(), d = w.size();
  Attention out{Matrix(m, std::vector<double>(n, 0.0)), Matrix(m, std::vector<double>(d, 0.0))};
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> q(d);
    for (std::size_t r = 0; r < d; ++r) {
      double s = b[r] + g[i][r];
      for (std::size_t c = 0; c < p[i].size(); ++c) s += w[r][c] * p[i][c];
      q[r] = s;
    }
    std::vector<double> e(n, 0.0);
    double z = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (masked[j]) continue;
      double dot = 0.0;
      for (std::size_t r = 0; r < d; ++r) dot += q[r] * keys[j][r];
      e[j] = std::exp(dot);
      z += e[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
      out.weights[i][j] = e[j] / z;
      for (std::size_t r = 0; r < d; ++r) out.context[i][r] += out.weights[i][j] * values[j][r];
    }
  }
  return out;
}

/// Per-tensor relative error ||a - n|| / (||a|| + ||n||) between the analytic
/// gradient and central differences of \p loss with step \p h. Tensors whose
/// gradients are both (numerically) zero report 0.
inline std::vector<std::pair<std::string, double>> gradient_check(hal::num::ParamSet<double>& params,
                                                                  const hal::num::GradStore<double>& analytic,
                                                                  const std::function<double()>& loss,
                                                                  double h = 1e-5) {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& t = params.value(i);
    double diff = 0.0, na = 0.0, nn = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
      const double keep = t[j];
      t[j] = keep + h;
      const double up = loss();
      t[j] = keep - h;
      const double down = loss();
      t[j] = keep;
      const double num = (up - down) / (2.0 * h);
      const double a = analytic[i][j];
      diff += (a - num) * (a - num);
      na += a * a;
      nn += num * num;
    }
    const double denom = std::sqrt(na) + std::sqrt(nn);
    out.emplace_back(params.name(i), denom < 1e-12 ? 0.0 : std::sqrt(diff) / denom);
  }
  return out;
}

/// Length of a longest common subsequence by plain recursion with memo.
inline std::size_t lcs_length(const Words& a, const Words& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == a.size() || j == b.size()) return 0;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t best = std::max(go(i + 1, j), go(i, j + 1));
    if (a[i] == b[j]) best = std::max(best, 1 + go(i + 1, j + 1));
    return memo[key] = best;
  };
  return go(0, 0);
}

/// Every maximum-size set of matched pairs (i, j), strictly increasing in both.
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> all_lcs_alignments(const Words& a,
                                                                                        const Words& b) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> all;
  std::vector<std::pair<std::size_t, std::size_t>> cur;
  std::size_t best = 0;
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i0, std::size_t j0) {
    if (cur.size() > best) {
      best = cur.size();
      all.clear();
    }
    if (cur.size() == best) all.push_back(cur);
    for (std::size_t i = i0; i < a.size(); ++i)
      for (std::size_t j = j0; j < b.size(); ++j)
        if (a[i] == b[j]) {
          cur.emplace_back(i, j);
          go(i + 1, j + 1);
          cur.pop_back();
        }
  };
  go(0, 0);
  return all;
}

struct Chunk {
  Words gold, hyp;
  std::size_t gold_start = 0;
  bool operator==(const Chunk& o) const { return gold == o.gold && hyp == o.hyp && gold_start == o.gold_start; }
};

/// Gaps between consecutive matched pairs of one alignment.
inline std::vector<Chunk> chunks_of(const Words& a, const Words& b,
                                    std::vector<std::pair<std::size_t, std::size_t>> matches) {
  std::vector<Chunk> out;
  matches.emplace_back(a.size(), b.size());
  std::size_t gi = 0, hi = 0;
  for (auto [i, j] : matches) {
    if (i > gi || j > hi) out.push_back({Words(a.begin() + gi, a.begin() + i), Words(b.begin() + hi, b.begin() + j), gi});
    gi = i + 1;
    hi = j + 1;
  }
  return out;
}

/// Levenshtein distance by exhaustive recursion over edit operations.
inline std::size_t edit_distance(const Words& a, const Words& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t best = std::min({go(i + 1, j) + 1, go(i, j + 1) + 1, go(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1)});
    return memo[key] = best;
  };
  return go(0, 0);
}

/// Strict chunk recall criterion stated directly: the hypothesis contains the
/// chunk's hyp words at some position p, the words on either side agree with
/// the gold words on either side of the gold span (or both sides end there),
/// and cutting both sequences around the chunk loses no common subsequence.
inline bool chunk_recalled(const Words& gold, const Chunk& c, const Words& hyp) {
  const std::size_t s = c.gold_start, g = c.gold.size(), hl = c.hyp.size();
  for (std::size_t p = 0; p + hl <= hyp.size(); ++p) {
    if (!std::equal(c.hyp.begin(), c.hyp.end(), hyp.begin() + static_cast<std::ptrdiff_t>(p))) continue;
    const bool left = (s == 0 && p == 0) || (s > 0 && p > 0 && gold[s - 1] == hyp[p - 1]);
    const bool right = (s + g == gold.size() && p + hl == hyp.size()) ||
                       (s + g < gold.size() && p + hl < hyp.size() && gold[s + g] == hyp[p + hl]);
    if (!left || !right) continue;
    const Words gl(gold.begin(), gold.begin() + static_cast<std::ptrdiff_t>(s));
    const Words hl_(hyp.begin(), hyp.begin() + static_cast<std::ptrdiff_t>(p));
    const Words gr(gold.begin() + static_cast<std::ptrdiff_t>(s + g), gold.end());
    const Words hr(hyp.begin() + static_cast<std::ptrdiff_t>(p + hl), hyp.end());
    if (lcs_length(gl, hl_) + lcs_length(gr, hr) == lcs_length(gold, hyp)) return true;
  }
  return false;
}

/// Every sequence the step model can finish within \p max_len steps, scored
/// as sum of log-probabilities over its length (EOS included; forced
/// sequences counted at max_len), sorted by score then tokens.
template <typename Model>
std::vector<std::pair<std::vector<std::size_t>, double>> enumerate_beam_oracle(Model& model, std::size_t max_len) {
  std::vector<std::pair<std::vector<std::size_t>, double>> out;
  const std::size_t v = model.vocab_size();
  const std::size_t eos = model.eos();
  std::function<void(std::vector<std::size_t>&, double)> go = [&](std::vector<std::size_t>& prefix, double lp) {
    // replay the prefix from scratch: slow and obviously right
    model.start(1);
    std::vector<double> probs;
    for (std::size_t t : prefix) {
      model.log_probs(probs);
      const std::size_t parent = 0;
      model.advance(std::span<const std::size_t>(&parent, 1), std::span<const std::size_t>(&t, 1));
    }
    model.log_probs(probs);
    const std::vector<double> here = probs;
    const std::size_t step = prefix.size() + 1;
    for (std::size_t tok = 0; tok < v; ++tok) {
      if (here[tok] == -INFINITY) continue;
      const double total = lp + here[tok];
      if (tok == eos) {
        out.emplace_back(prefix, total / static_cast<double>(step));
      } else if (step == max_len) {
        auto seq = prefix;
        seq.push_back(tok);
        out.emplace_back(seq, total / static_cast<double>(step));
      } else {
        prefix.push_back(tok);
        go(prefix, total);
        prefix.pop_back();
      }
    }
  };
  std::vector<std::size_t> prefix;
  go(prefix, 0.0);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

}  // namespace oracle
