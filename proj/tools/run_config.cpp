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

#include "run_config.hpp"

#include <charconv>
#include <filesystem>

#include "hal/util/io.hpp"

namespace hal::cli {

RunConfig::RunConfig(std::string command, std::vector<KeySpec> schema)
    : command_(std::move(command)), schema_(std::move(schema)) {
  for (const auto& s : schema_) values_[s.key] = s.fallback;
}

const KeySpec& RunConfig::spec(std::string_view key) const {
  for (const auto& s : schema_)
    if (s.key == key) return s;
  std::string known;
  for (const auto& s : schema_) known += (known.empty() ? "" : ", ") + s.key;
  throw ValidationError(command_ + ": unknown key '" + std::string(key) + "' (known: " + known + ")");
}

void RunConfig::load_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw ValidationError("config file not found: " + path);
  std::size_t n = 0;
  for (const auto& line : read_lines(path)) {
    ++n;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError(path + ":" + std::to_string(n) + ": expected key=value");
    set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
}

void RunConfig::set(std::string_view key, std::string_view value) {
  spec(key);
  values_.find(key)->second = std::string(value);
}

void RunConfig::check_required() const {
  for (const auto& s : schema_)
    if (s.required && values_.find(s.key)->second.empty())
      throw ValidationError(command_ + ": missing required setting '" + s.key + "'");
}

bool RunConfig::has(std::string_view key) const {
  spec(key);
  return !values_.find(key)->second.empty();
}

const std::string& RunConfig::str(std::string_view key) const {
  spec(key);
  return values_.find(key)->second;
}

std::uint64_t RunConfig::u64(std::string_view key) const {
  const std::string& v = str(key);
  std::uint64_t out = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || end != v.data() + v.size())
    throw ValidationError(command_ + ": '" + std::string(key) + "' must be a non-negative integer, got '" + v + "'");
  return out;
}

std::size_t RunConfig::size(std::string_view key) const { return static_cast<std::size_t>(u64(key)); }

double RunConfig::real(std::string_view key) const {
  const std::string& v = str(key);
  try {
    std::size_t used = 0;
    const double out = std::stod(v, &used);
    if (used == v.size()) return out;
  } catch (const std::exception&) {
  }
  throw ValidationError(command_ + ": '" + std::string(key) + "' must be a number, got '" + v + "'");
}

bool RunConfig::flag(std::string_view key) const {
  const std::string& v = str(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no" || v.empty()) return false;
  throw ValidationError(command_ + ": '" + std::string(key) + "' must be true or false, got '" + v + "'");
}

const std::string& RunConfig::input_path(std::string_view key) const {
  const std::string& v = str(key);
  if (v.empty()) throw ValidationError(command_ + ": '" + std::string(key) + "' is not set");
  if (!std::filesystem::exists(v)) throw ValidationError(command_ + ": " + std::string(key) + " not found: " + v);
  return v;
}

std::string RunConfig::echo() const {
  std::string out;
  for (const auto& s : schema_) out += s.key + "=" + values_.find(s.key)->second + "\n";
  return out;
}

}  // namespace hal::cli
