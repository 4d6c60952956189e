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

#include "hal/eval/align.hpp"

#include <algorithm>
#include <stdexcept>

namespace hal::eval {

std::vector<std::pair<std::size_t, std::size_t>> lcs_matches(const Words& a, const Words& b) {
  const std::size_t n = a.size(), m = b.size();
  // suffix table: L[i][j] = LCS length of a[i..] and b[j..]
  std::vector<std::size_t> L((n + 1) * (m + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return L[i * (m + 1) + j]; };
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = m; j-- > 0;)
      at(i, j) = a[i] == b[j] ? at(i + 1, j + 1) + 1 : std::max(at(i + 1, j), at(i, j + 1));
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0, j = 0;
  while (i < n && j < m) {
    if (a[i] == b[j]) {
      out.emplace_back(i++, j++);
    } else if (at(i + 1, j) >= at(i, j + 1)) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

std::vector<ErrorChunk> extract_error_chunks(const Words& gold, const Words& hyp) {
  std::vector<ErrorChunk> out;
  auto matches = lcs_matches(gold, hyp);
  matches.emplace_back(gold.size(), hyp.size());  // sentinel
  std::size_t gi = 0, hi = 0;
  for (const auto& [gm, hm] : matches) {
    if (gm > gi || hm > hi) {
      ErrorChunk c;
      c.gold.assign(gold.begin() + static_cast<std::ptrdiff_t>(gi), gold.begin() + static_cast<std::ptrdiff_t>(gm));
      c.hyp.assign(hyp.begin() + static_cast<std::ptrdiff_t>(hi), hyp.begin() + static_cast<std::ptrdiff_t>(hm));
      c.gold_start = gi;
      c.hyp_start = hi;
      out.push_back(std::move(c));
    }
    gi = gm + 1;
    hi = hm + 1;
  }
  return out;
}

std::size_t edit_distance(const Words& a, const Words& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double wer(const Words& gold, const Words& hyp) {
  if (gold.empty()) throw std::invalid_argument("word error rate is undefined for an empty reference");
  return static_cast<double>(edit_distance(gold, hyp)) / static_cast<double>(gold.size());
}

}  // namespace hal::eval
