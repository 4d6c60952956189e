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

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hal::cli {

/// Bad configuration or input; the process exits with status 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct KeySpec {
  std::string key;
  std::string fallback;  ///< empty means unset
  std::string help;
  bool required = false;
};

/// Settings of one command: schema defaults, then a key=value file, then
/// command-line overrides, later sources winning.
class RunConfig {
 public:
  RunConfig(std::string command, std::vector<KeySpec> schema);

  const std::string& command() const noexcept { return command_; }
  const std::vector<KeySpec>& schema() const noexcept { return schema_; }

  /// Reads "key=value" lines; blank lines and '#' comments are skipped.
  void load_file(const std::string& path);
  void set(std::string_view key, std::string_view value);
  /// Throws ValidationError for a required key left empty.
  void check_required() const;

  bool has(std::string_view key) const;
  const std::string& str(std::string_view key) const;
  std::size_t size(std::string_view key) const;
  std::uint64_t u64(std::string_view key) const;
  double real(std::string_view key) const;
  bool flag(std::string_view key) const;
  /// Path that must name an existing file or directory.
  const std::string& input_path(std::string_view key) const;

  /// Effective settings as key=value lines in schema order.
  std::string echo() const;

 private:
  const KeySpec& spec(std::string_view key) const;

  std::string command_;
  std::vector<KeySpec> schema_;
  std::map<std::string, std::string, std::less<>> values_;
};

}  // namespace hal::cli
