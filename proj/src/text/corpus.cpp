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

#include "hal/text/corpus.hpp"

#include <set>
#include <stdexcept>

#include "hal/util/io.hpp"

namespace hal::text {

std::vector<CorpusRecord> parse_corpus(std::string_view contents) {
  std::vector<CorpusRecord> out;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  for (std::string line : split(contents, '\n')) {
    ++line_no;
    const std::string raw = line;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split(line, '\t');
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("corpus line " + std::to_string(line_no) + ": " + what);
    };
    if (fields.size() < 2) fail("expected id<TAB>true_text[<TAB>recognized_text]");
    if (fields.size() > 3) fail("too many fields");
    CorpusRecord r;
    r.id = std::string(trim(fields[0]));
    if (r.id.empty()) fail("empty id");
    if (!seen.insert(r.id).second) fail("duplicate id '" + r.id + "'");
    r.true_text = fields[1];
    if (fields.size() == 3) r.recognized_text = fields[2];
    r.raw = raw;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CorpusRecord> load_corpus(const std::string& path) {
  return parse_corpus(read_file(path));
}

std::string format_record(const CorpusRecord& r) {
  std::string out = r.id + '\t' + r.true_text;
  if (r.recognized_text) out += '\t' + *r.recognized_text;
  return out;
}

std::string format_corpus(const std::vector<CorpusRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += format_record(r);
    out += '\n';
  }
  return out;
}

UtterancePair prepare_pair(const CorpusRecord& record, const Lexicon& lexicon, const G2P& fallback) {
  UtterancePair p;
  p.id = record.id;
  p.true_words = prepare_text(record.true_text);
  try {
    p.true_phones = phonemize(p.true_words, lexicon, fallback);
  } catch (const std::invalid_argument&) {
    p.true_phones.clear();
  }
  if (record.recognized_text) {
    p.has_recognized = true;
    p.recognized_words = prepare_text(*record.recognized_text);
  }
  return p;
}

std::vector<UtterancePair> filter_pairs(std::vector<UtterancePair> pairs, FilterReport* report) {
  std::vector<UtterancePair> kept;
  kept.reserve(pairs.size());
  for (auto& p : pairs) {
    if (!p.true_words.empty() && !p.true_phones.empty()) kept.push_back(std::move(p));
  }
  if (report) {
    report->total = pairs.size();
    report->removed = pairs.size() - kept.size();
  }
  return kept;
}

CorpusRecord to_record(const UtterancePair& pair) {
  CorpusRecord r;
  r.id = pair.id;
  r.true_text = join(pair.true_words, " ");
  if (pair.has_recognized) r.recognized_text = join(pair.recognized_words, " ");
  return r;
}

}  // namespace hal::text
