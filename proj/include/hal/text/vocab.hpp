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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hal/text/tokenize.hpp"

namespace hal::text {

using Token = std::size_t;

class Vocab {
 public:
  static constexpr Token kPad = 0;
  static constexpr Token kBos = 1;
  static constexpr Token kEos = 2;
  static constexpr Token kUnk = 3;
  static constexpr std::size_t kReserved = 4;
  static const std::array<std::string, kReserved>& reserved_names();

  /// Reserved tokens only.
  Vocab();

  /// Tokens with count >= min_count, ordered by descending count then
  /// byte-wise. Throws std::invalid_argument if the corpus has no tokens.
  static Vocab build(const std::vector<Words>& corpus, std::size_t min_count = 1);
  /// Reserved tokens followed by \p tokens in the given order.
  static Vocab from_tokens(const std::vector<std::string>& tokens);

  /// One token per line, reserved lines first, each line ending in '\n'.
  std::string serialize() const;
  static Vocab parse(std::string_view contents);
  static Vocab load(const std::string& path);
  void save(const std::string& path) const;

  std::size_t size() const noexcept { return tokens_.size(); }
  bool contains(std::string_view word) const;
  Token encode(std::string_view word) const;
  std::vector<Token> encode(const Words& words) const;
  /// Throws std::out_of_range for an invalid index.
  const std::string& decode(Token t) const;
  Words decode(std::span<const Token> tokens) const;

  /// FNV-1a of serialize().
  std::uint64_t content_hash() const;
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  friend bool operator==(const Vocab& a, const Vocab& b) { return a.tokens_ == b.tokens_; }

 private:
  void push(std::string token);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Token> index_;
};

}  // namespace hal::text
