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

#include "hal/text/vocab.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "hal/util/hash.hpp"
#include "hal/util/io.hpp"

namespace hal::text {

const std::array<std::string, Vocab::kReserved>& Vocab::reserved_names() {
  static const std::array<std::string, kReserved> names = {"<pad>", "<s>", "</s>", "<unk>"};
  return names;
}

Vocab::Vocab() {
  for (const auto& r : reserved_names()) push(r);
}

void Vocab::push(std::string token) {
  if (token.empty() || token.find_first_of(" \t\n\r") != std::string::npos)
    throw std::invalid_argument("invalid vocabulary token '" + token + "'");
  if (!index_.emplace(token, tokens_.size()).second)
    throw std::invalid_argument("duplicate vocabulary token '" + token + "'");
  tokens_.push_back(std::move(token));
}

Vocab Vocab::build(const std::vector<Words>& corpus, std::size_t min_count) {
  std::map<std::string, std::size_t> counts;
  for (const auto& words : corpus)
    for (const auto& w : words) ++counts[w];
  if (counts.empty()) throw std::invalid_argument("cannot build a vocabulary from an empty corpus");
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [w, c] : counts) {
    if (c >= std::max<std::size_t>(min_count, 1)) kept.emplace_back(w, c);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocab v;
  for (auto& [w, c] : kept) {
    if (!v.contains(w)) v.push(w);
  }
  return v;
}

Vocab Vocab::from_tokens(const std::vector<std::string>& tokens) {
  Vocab v;
  for (const auto& t : tokens) v.push(t);
  return v;
}

std::string Vocab::serialize() const {
  std::string out;
  for (const auto& t : tokens_) {
    out += t;
    out += '\n';
  }
  return out;
}

Vocab Vocab::parse(std::string_view contents) {
  std::vector<std::string> lines = split(contents, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < kReserved)
    throw std::invalid_argument("vocabulary file lacks the reserved tokens");
  for (std::size_t i = 0; i < kReserved; ++i) {
    if (lines[i] != reserved_names()[i])
      throw std::invalid_argument("vocabulary line " + std::to_string(i + 1) + ": expected " +
                                  reserved_names()[i]);
  }
  return from_tokens(std::vector<std::string>(lines.begin() + kReserved, lines.end()));
}

Vocab Vocab::load(const std::string& path) { return parse(read_file(path)); }

void Vocab::save(const std::string& path) const { write_file_atomic(path, serialize()); }

bool Vocab::contains(std::string_view word) const { return index_.count(std::string(word)) > 0; }

Token Vocab::encode(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? kUnk : it->second;
}

std::vector<Token> Vocab::encode(const Words& words) const {
  std::vector<Token> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(encode(w));
  return out;
}

const std::string& Vocab::decode(Token t) const {
  if (t >= tokens_.size()) throw std::out_of_range("token index " + std::to_string(t));
  return tokens_[t];
}

Words Vocab::decode(std::span<const Token> tokens) const {
  Words out;
  out.reserve(tokens.size());
  for (Token t : tokens) out.push_back(decode(t));
  return out;
}

std::uint64_t Vocab::content_hash() const { return fnv1a64(serialize()); }

}  // namespace hal::text
