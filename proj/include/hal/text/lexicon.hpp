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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hal/text/tokenize.hpp"

namespace hal::text {

using Phones = std::vector<std::string>;

/// Grapheme-to-phoneme fallback for words missing from the lexicon.
class G2P {
 public:
  virtual ~G2P() = default;
  /// May return an empty sequence; phonemize() treats that as an error.
  virtual Phones pronounce(std::string_view word) const = 0;
};

/// Letter and digraph table over lowercase ARPAbet, greedy longest match,
/// doubled consonants collapsed. Characters outside a-z, 0-9 produce nothing.
class TableG2P final : public G2P {
 public:
  Phones pronounce(std::string_view word) const override;
};

class Lexicon {
 public:
  /// Parses "word<TAB>ph1 ph2 ..." lines. Blank lines and lines starting with
  /// '#' are skipped. Duplicate words append pronunciation variants in file
  /// order. Throws std::invalid_argument on a malformed or empty entry.
  static Lexicon parse(std::string_view contents);
  static Lexicon load(const std::string& path);

  void add(const std::string& word, Phones pronunciation);

  /// All variants for \p word, or nullptr.
  const std::vector<Phones>* find(std::string_view word) const;
  const std::set<std::string>& inventory() const noexcept { return inventory_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::string, std::vector<Phones>, std::less<>> entries_;
  std::set<std::string> inventory_;
};

/// First lexicon pronunciation of each word, else the fallback's output,
/// concatenated. Throws std::invalid_argument if a word yields no phonemes.
Phones phonemize(const Words& words, const Lexicon& lexicon, const G2P& fallback);

}  // namespace hal::text
