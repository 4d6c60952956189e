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

namespace hal {

/// Reads a text file into lines (newline stripped, trailing '\r' stripped).
std::vector<std::string> read_lines(const std::string& path);

std::string read_file(const std::string& path);

/// Writes \p contents to \p path through a sibling temp file and rename, so a
/// reader never observes a partially written file.
void write_file_atomic(const std::string& path, std::string_view contents);

std::vector<std::string> split(std::string_view s, char sep);

/// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string> split_ws(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string_view trim(std::string_view s);

}  // namespace hal
