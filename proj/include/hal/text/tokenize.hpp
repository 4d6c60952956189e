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

#include <string>
#include <string_view>
#include <vector>

namespace hal::text {

using Words = std::vector<std::string>;

/// Lowercases, removes Unicode punctuation and splits on whitespace runs.
///
/// Apostrophes (U+0027, and U+2019 which is folded to U+0027) survive when
/// they sit strictly inside a token, so contractions like "don't" are kept;
/// leading and trailing apostrophes are dropped. Every other punctuation
/// code point is deleted outright. Idempotent.
Words tokenize(std::string_view raw);

/// True for transcript markup tokens such as "[noise]", "<unk>" or "{lipsmack}".
bool is_special_token(std::string_view token);

/// Drops whitespace-delimited markup tokens (see is_special_token) from raw text.
std::string strip_special_tokens(std::string_view raw);

/// strip_special_tokens followed by tokenize: the full text pipeline applied
/// to both sides of a corpus.
Words prepare_text(std::string_view raw);

}  // namespace hal::text
