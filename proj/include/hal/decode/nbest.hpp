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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hal/decode/step_model.hpp"
#include "hal/text/vocab.hpp"

namespace hal::decode {

/// A finished token sequence (EOS not included). For beam search the score
/// is the length-normalised log-probability; for sampling it is the count.
struct Hypothesis {
  std::vector<Token> tokens;
  double score = 0.0;
  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

struct NBestEntry {
  text::Words words;
  double score = 0.0;
  friend bool operator==(const NBestEntry&, const NBestEntry&) = default;
};

struct NBestList {
  std::string id;
  std::vector<NBestEntry> entries;
  friend bool operator==(const NBestList&, const NBestList&) = default;
};

NBestList to_nbest(const std::string& id, const std::vector<Hypothesis>& hyps, const text::Vocab& vocab);

/// "id<TAB>rank<TAB>score<TAB>words" per entry, rank from 1, score with six
/// decimals.
std::string format_nbest(const NBestList& list);
std::string format_nbest(const std::vector<NBestList>& lists);

/// Groups lines by id in order of first appearance and orders entries by
/// rank. Throws std::invalid_argument on malformed lines, repeated ranks or
/// gaps in the rank sequence.
std::vector<NBestList> parse_nbest(std::string_view contents);
std::vector<NBestList> load_nbest(const std::string& path);

/// Index by id.
std::map<std::string, const NBestList*> index_nbest(const std::vector<NBestList>& lists);

}  // namespace hal::decode
