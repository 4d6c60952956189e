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

#include "hal/decode/nbest.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "hal/util/io.hpp"

namespace hal::decode {

NBestList to_nbest(const std::string& id, const std::vector<Hypothesis>& hyps, const text::Vocab& vocab) {
  NBestList out;
  out.id = id;
  for (const auto& h : hyps) out.entries.push_back({vocab.decode(h.tokens), h.score});
  return out;
}

std::string format_nbest(const NBestList& list) {
  std::string out;
  char score[64];
  for (std::size_t i = 0; i < list.entries.size(); ++i) {
    const auto& e = list.entries[i];
    std::snprintf(score, sizeof score, "%.6f", e.score == 0.0 ? 0.0 : e.score);
    out += list.id + '\t' + std::to_string(i + 1) + '\t' + score + '\t' + join(e.words, " ") + '\n';
  }
  return out;
}

std::string format_nbest(const std::vector<NBestList>& lists) {
  std::string out;
  for (const auto& l : lists) out += format_nbest(l);
  return out;
}

std::vector<NBestList> parse_nbest(std::string_view contents) {
  std::vector<NBestList> lists;
  std::map<std::string, std::size_t> where;
  std::map<std::string, std::vector<std::pair<std::size_t, NBestEntry>>> ranked;
  std::size_t line_no = 0;
  for (std::string line : split(contents, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("n-best line " + std::to_string(line_no) + ": " + what);
    };
    const auto f = split(line, '\t');
    if (f.size() != 4) fail("expected id<TAB>rank<TAB>score<TAB>words");
    std::size_t rank = 0;
    double score = 0.0;
    try {
      std::size_t used = 0;
      rank = std::stoul(f[1], &used);
      if (used != f[1].size() || rank == 0) fail("bad rank '" + f[1] + "'");
      score = std::stod(f[2], &used);
      if (used != f[2].size()) fail("bad score '" + f[2] + "'");
    } catch (const std::logic_error&) {
      fail("bad rank or score");
    }
    if (where.emplace(f[0], lists.size()).second) lists.push_back({f[0], {}});
    ranked[f[0]].push_back({rank, {split_ws(f[3]), score}});
  }
  for (auto& list : lists) {
    auto& rows = ranked[list.id];
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].first != i + 1)
        throw std::invalid_argument("n-best list '" + list.id + "' has a missing or repeated rank");
      list.entries.push_back(std::move(rows[i].second));
    }
  }
  return lists;
}

std::vector<NBestList> load_nbest(const std::string& path) { return parse_nbest(read_file(path)); }

std::map<std::string, const NBestList*> index_nbest(const std::vector<NBestList>& lists) {
  std::map<std::string, const NBestList*> out;
  for (const auto& l : lists) out[l.id] = &l;
  return out;
}

}  // namespace hal::decode
