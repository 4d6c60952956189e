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

#include "hal/text/lexicon.hpp"

#include <stdexcept>

#include "hal/util/io.hpp"

namespace hal::text {

namespace {

struct Rule {
  std::string_view graphemes;
  std::string_view phones;
};

// Longest entries first within each leading letter does not matter: lookup
// tries lengths 4, 3, 2, 1 in turn.
constexpr Rule kRules[] = {
    {"tion", "sh ah n"}, {"sion", "zh ah n"}, {"ough", "ao"}, {"augh", "ao"},
    {"tch", "ch"},       {"dge", "jh"},       {"igh", "ay"},  {"sch", "s k"},
    {"ch", "ch"},        {"sh", "sh"},        {"th", "th"},   {"ph", "f"},
    {"wh", "w"},         {"ck", "k"},         {"ng", "ng"},   {"qu", "k w"},
    {"gh", "g"},         {"kn", "n"},         {"wr", "r"},    {"ee", "iy"},
    {"ea", "iy"},        {"oo", "uw"},        {"ou", "aw"},   {"ow", "ow"},
    {"oi", "oy"},        {"oy", "oy"},        {"ai", "ey"},   {"ay", "ey"},
    {"au", "ao"},        {"aw", "ao"},        {"ie", "iy"},   {"ei", "ey"},
    {"oa", "ow"},        {"ew", "uw"},        {"er", "er"},   {"ir", "er"},
    {"ur", "er"},        {"ar", "aa r"},      {"or", "ao r"}, {"a", "ae"},
    {"b", "b"},          {"c", "k"},          {"d", "d"},     {"e", "eh"},
    {"f", "f"},          {"g", "g"},          {"h", "hh"},    {"i", "ih"},
    {"j", "jh"},         {"k", "k"},          {"l", "l"},     {"m", "m"},
    {"n", "n"},          {"o", "aa"},         {"p", "p"},     {"q", "k"},
    {"r", "r"},          {"s", "s"},          {"t", "t"},     {"u", "ah"},
    {"v", "v"},          {"w", "w"},          {"x", "k s"},   {"y", "y"},
    {"z", "z"},          {"0", "z ih r ow"},  {"1", "w ah n"},  {"2", "t uw"},
    {"3", "th r iy"},    {"4", "f ao r"},     {"5", "f ay v"},  {"6", "s ih k s"},
    {"7", "s eh v ah n"}, {"8", "ey t"},      {"9", "n ay n"},
};

const Rule* match(std::string_view rest) {
  for (std::size_t len = 4; len >= 1; --len) {
    if (rest.size() < len) continue;
    const std::string_view head = rest.substr(0, len);
    for (const Rule& r : kRules)
      if (r.graphemes == head) return &r;
  }
  return nullptr;
}

bool is_consonant(char c) {
  return c >= 'a' && c <= 'z' && c != 'a' && c != 'e' && c != 'i' && c != 'o' && c != 'u';
}

}  // namespace

Phones TableG2P::pronounce(std::string_view word) const {
  Phones out;
  std::size_t i = 0;
  while (i < word.size()) {
    if (i > 0 && is_consonant(word[i]) && word[i] == word[i - 1]) {
      ++i;
      continue;
    }
    const Rule* r = match(word.substr(i));
    if (!r) {
      ++i;
      continue;
    }
    for (auto& p : split_ws(r->phones)) out.push_back(std::move(p));
    i += r->graphemes.size();
  }
  return out;
}

Lexicon Lexicon::parse(std::string_view contents) {
  Lexicon lex;
  std::size_t line_no = 0;
  for (const std::string& raw : split(contents, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw std::invalid_argument("lexicon line " + std::to_string(line_no) + ": missing tab");
    const std::string word(trim(line.substr(0, tab)));
    Phones pron = split_ws(line.substr(tab + 1));
    if (word.empty() || pron.empty())
      throw std::invalid_argument("lexicon line " + std::to_string(line_no) + ": empty entry");
    lex.add(word, std::move(pron));
  }
  return lex;
}

Lexicon Lexicon::load(const std::string& path) { return parse(read_file(path)); }

void Lexicon::add(const std::string& word, Phones pronunciation) {
  if (pronunciation.empty())
    throw std::invalid_argument("empty pronunciation for '" + word + "'");
  for (const auto& p : pronunciation) inventory_.insert(p);
  entries_[word].push_back(std::move(pronunciation));
}

const std::vector<Phones>* Lexicon::find(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

Phones phonemize(const Words& words, const Lexicon& lexicon, const G2P& fallback) {
  Phones out;
  for (const auto& w : words) {
    if (const auto* prons = lexicon.find(w)) {
      out.insert(out.end(), prons->front().begin(), prons->front().end());
      continue;
    }
    Phones p = fallback.pronounce(w);
    if (p.empty()) throw std::invalid_argument("no pronunciation for '" + w + "'");
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

}  // namespace hal::text
