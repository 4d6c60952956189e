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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hal/text/lexicon.hpp"
#include "hal/text/tokenize.hpp"

namespace hal::text {

/// One line of a parallel corpus file: id<TAB>true_text[<TAB>recognized_text].
struct CorpusRecord {
  std::string id;
  std::string true_text;
  std::optional<std::string> recognized_text;
  /// The line as read (without its newline); empty for constructed records.
  std::string raw;
};

/// Throws std::invalid_argument naming the line on a missing id or true-text
/// field, too many fields, or a duplicate id. Blank lines are skipped; a
/// trailing '\r' is removed.
std::vector<CorpusRecord> parse_corpus(std::string_view contents);
std::vector<CorpusRecord> load_corpus(const std::string& path);
std::string format_record(const CorpusRecord& r);
std::string format_corpus(const std::vector<CorpusRecord>& records);

struct UtterancePair {
  std::string id;
  Words true_words;
  Phones true_phones;
  Words recognized_words;
  bool has_recognized = false;
};

/// Runs the text pipeline on both sides. A true side that cannot be
/// pronounced leaves true_phones empty so that filter_pairs drops it.
UtterancePair prepare_pair(const CorpusRecord& record, const Lexicon& lexicon, const G2P& fallback);

struct FilterReport {
  std::size_t total = 0;
  std::size_t removed = 0;
  double removed_percent() const {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(removed) / static_cast<double>(total);
  }
};

/// Drops pairs whose true side has no words or no phonemes. Survivors keep
/// their order and contents.
std::vector<UtterancePair> filter_pairs(std::vector<UtterancePair> pairs,
                                        FilterReport* report = nullptr);

/// Tokenized corpus file: the prepared words of each side joined by single
/// spaces, in the parallel corpus layout.
CorpusRecord to_record(const UtterancePair& pair);

}  // namespace hal::text
