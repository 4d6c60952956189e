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

#include "hal/model/config.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "hal/util/io.hpp"

namespace hal::model {

namespace {

std::size_t to_size(std::string_view key, std::string_view v) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("config: '" + std::string(key) + "' expects an unsigned integer, got '" +
                                std::string(v) + "'");
  return out;
}

double to_double(std::string_view key, std::string_view v) {
  try {
    std::size_t used = 0;
    const std::string s(v);
    const double d = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: '" + std::string(key) + "' expects a number, got '" +
                                std::string(v) + "'");
  }
}

std::string fmt_double(double d) {
  std::ostringstream os;
  os.precision(17);
  os << d;
  return os.str();
}

std::vector<ConvSpec> repeat(std::size_t channels, std::size_t kernel, std::size_t n) {
  return std::vector<ConvSpec>(n, ConvSpec{channels, kernel});
}

std::vector<ConvSpec> ladder(std::size_t c1, std::size_t c2, std::size_t c3) {
  auto out = repeat(c1, 11, 3);
  for (auto s : repeat(c2, 7, 2)) out.push_back(s);
  out.push_back({c3, 5});
  return out;
}

void stack_shapes(std::vector<std::pair<std::string, num::Shape>>& out, const std::string& prefix,
                  std::size_t vocab, const ModelConfig& cfg, const std::vector<ConvSpec>& stack) {
  const std::size_t d = cfg.embed_dim;
  out.push_back({prefix + ".embed", {vocab, d}});
  out.push_back({prefix + ".pos", {cfg.max_positions, d}});
  std::size_t in = d;
  if (stack.front().channels != d) {
    out.push_back({prefix + ".in.w", {stack.front().channels, d}});
    out.push_back({prefix + ".in.b", {stack.front().channels}});
    in = stack.front().channels;
  }
  for (std::size_t i = 0; i < stack.size(); ++i) {
    const auto& s = stack[i];
    const std::string n = std::to_string(i);
    out.push_back({prefix + ".conv" + n + ".k", {2 * s.channels, in, s.kernel}});
    out.push_back({prefix + ".conv" + n + ".b", {2 * s.channels}});
    if (in != s.channels) {
      out.push_back({prefix + ".res" + n + ".w", {s.channels, in}});
      out.push_back({prefix + ".res" + n + ".b", {s.channels}});
    }
    in = s.channels;
  }
  if (in != d) {
    out.push_back({prefix + ".out.w", {d, in}});
    out.push_back({prefix + ".out.b", {d}});
  }
}

}  // namespace

std::vector<ConvSpec> parse_conv_stack(std::string_view text) {
  std::vector<ConvSpec> out;
  for (const std::string& item : split(text, ',')) {
    const std::string_view it = trim(item);
    auto bad = [&] {
      return std::invalid_argument("conv stack item '" + std::string(it) + "' is not CxK[*N]");
    };
    const auto x = it.find('x');
    if (x == std::string_view::npos) throw bad();
    const auto star = it.find('*');
    const std::string_view ch = it.substr(0, x);
    const std::string_view kw = it.substr(x + 1, star == std::string_view::npos ? std::string_view::npos : star - x - 1);
    std::size_t n = 1;
    if (star != std::string_view::npos) n = to_size("repeat", it.substr(star + 1));
    if (n == 0) throw bad();
    const ConvSpec s{to_size("channels", ch), to_size("kernel", kw)};
    for (std::size_t r = 0; r < n; ++r) out.push_back(s);
  }
  return out;
}

std::string format_conv_stack(const std::vector<ConvSpec>& stack) {
  std::string out;
  for (std::size_t i = 0; i < stack.size();) {
    std::size_t j = i;
    while (j < stack.size() && stack[j] == stack[i]) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(stack[i].channels) + 'x' + std::to_string(stack[i].kernel);
    if (j - i > 1) out += '*' + std::to_string(j - i);
    i = j;
  }
  return out;
}

ModelMode parse_mode(std::string_view s) {
  if (s == "single") return ModelMode::single;
  if (s == "dual") return ModelMode::dual;
  throw std::invalid_argument("model mode must be 'single' or 'dual', got '" + std::string(s) + "'");
}

std::string_view mode_name(ModelMode m) { return m == ModelMode::single ? "single" : "dual"; }

void ModelConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("model config: " + msg); };
  if (embed_dim == 0) fail("embed_dim must be > 0");
  if (word_encoder.empty()) fail("word encoder needs at least one layer");
  if (dual() && phone_encoder.empty()) fail("dual mode needs a phoneme encoder");
  for (const auto* stack : {&word_encoder, &phone_encoder}) {
    for (const auto& s : *stack) {
      if (s.channels == 0 || s.kernel == 0) fail("conv channels and kernel must be > 0");
      if (s.kernel % 2 == 0) fail("encoder kernel widths must be odd");
    }
  }
  if (dec_layers == 0 || dec_kernel == 0) fail("decoder layers and kernel must be > 0");
  if (src_vocab <= 4 || tgt_vocab <= 4) fail("source and target vocabularies must exceed the 4 reserved tokens");
  if (dual() && phone_vocab <= 4) fail("dual mode needs a phoneme vocabulary");
  if (max_positions == 0) fail("max_positions must be > 0");
  if (!(dropout >= 0.0 && dropout < 1.0)) fail("dropout must be in [0, 1)");
  if (!(encoder_dropout >= 0.0 && encoder_dropout <= 1.0)) fail("encoder_dropout must be in [0, 1]");
}

std::string ModelConfig::serialize() const {
  std::string out;
  auto kv = [&](const char* k, const std::string& v) { out += std::string(k) + '=' + v + '\n'; };
  kv("name", name);
  kv("mode", std::string(mode_name(mode)));
  kv("embed_dim", std::to_string(embed_dim));
  kv("word_encoder", format_conv_stack(word_encoder));
  kv("phone_encoder", format_conv_stack(phone_encoder));
  kv("dec_layers", std::to_string(dec_layers));
  kv("dec_kernel", std::to_string(dec_kernel));
  kv("src_vocab", std::to_string(src_vocab));
  kv("tgt_vocab", std::to_string(tgt_vocab));
  kv("phone_vocab", std::to_string(phone_vocab));
  kv("max_positions", std::to_string(max_positions));
  kv("dropout", fmt_double(dropout));
  kv("encoder_dropout", fmt_double(encoder_dropout));
  return out;
}

void ModelConfig::set(std::string_view key, std::string_view value) {
  if (key == "name") name = std::string(value);
  else if (key == "mode") mode = parse_mode(value);
  else if (key == "embed_dim") embed_dim = to_size(key, value);
  else if (key == "word_encoder") word_encoder = parse_conv_stack(value);
  else if (key == "phone_encoder") phone_encoder = value.empty() ? std::vector<ConvSpec>{} : parse_conv_stack(value);
  else if (key == "dec_layers") dec_layers = to_size(key, value);
  else if (key == "dec_kernel") dec_kernel = to_size(key, value);
  else if (key == "src_vocab") src_vocab = to_size(key, value);
  else if (key == "tgt_vocab") tgt_vocab = to_size(key, value);
  else if (key == "phone_vocab") phone_vocab = to_size(key, value);
  else if (key == "max_positions") max_positions = to_size(key, value);
  else if (key == "dropout") dropout = to_double(key, value);
  else if (key == "encoder_dropout") encoder_dropout = to_double(key, value);
  else throw std::invalid_argument("model config: unknown key '" + std::string(key) + "'");
}

ModelConfig ModelConfig::parse(std::string_view text) {
  ModelConfig cfg;
  cfg.word_encoder.clear();
  for (const std::string& line : split(text, '\n')) {
    const std::string_view l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("model config: missing '=' in '" + std::string(l) + "'");
    cfg.set(trim(l.substr(0, eq)), trim(l.substr(eq + 1)));
  }
  return cfg;
}

ModelConfig preset(std::string_view name, ModelMode mode) {
  ModelConfig c;
  c.name = std::string(name);
  c.mode = mode;
  const bool dual = mode == ModelMode::dual;
  if (name == "paper") {
    c.embed_dim = 256;
    c.word_encoder = dual ? ladder(64, 128, 256) : repeat(256, 3, 4);
    c.dec_layers = 3;
    c.dec_kernel = 3;
    c.max_positions = 1024;
    c.dropout = 0.2;
    c.encoder_dropout = 0.5;
  } else if (name == "desk") {
    c.embed_dim = 64;
    c.word_encoder = dual ? ladder(16, 32, 64) : repeat(64, 3, 2);
    c.dec_layers = 2;
    c.dec_kernel = 3;
    c.max_positions = 256;
  } else if (name == "toy") {
    c.embed_dim = 32;
    c.word_encoder = dual ? ladder(8, 16, 32) : repeat(32, 3, 2);
    c.dec_layers = 2;
    c.dec_kernel = 3;
    c.max_positions = 128;
    c.dropout = 0.1;
  } else {
    throw std::invalid_argument("unknown model preset '" + std::string(name) + "'");
  }
  if (dual) c.phone_encoder = c.word_encoder;
  return c;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"paper", "desk", "toy"};
  return names;
}

std::vector<std::pair<std::string, num::Shape>> param_shapes(const ModelConfig& cfg) {
  std::vector<std::pair<std::string, num::Shape>> out;
  const std::size_t d = cfg.embed_dim;
  stack_shapes(out, "wenc", cfg.src_vocab, cfg, cfg.word_encoder);
  if (cfg.dual()) stack_shapes(out, "penc", cfg.phone_vocab, cfg, cfg.phone_encoder);
  out.push_back({"dec.embed", {cfg.tgt_vocab, d}});
  out.push_back({"dec.pos", {cfg.max_positions, d}});
  for (std::size_t l = 0; l < cfg.dec_layers; ++l) {
    const std::string n = std::to_string(l);
    out.push_back({"dec.conv" + n + ".k", {2 * d, d, cfg.dec_kernel}});
    out.push_back({"dec.conv" + n + ".b", {2 * d}});
    out.push_back({"dec.attn" + n + ".w", {d, d}});
    out.push_back({"dec.attn" + n + ".b", {d}});
  }
  if (cfg.dual()) {
    out.push_back({"dual.w", {d, 2 * d}});
    out.push_back({"dual.b", {d}});
  }
  out.push_back({"out.w", {cfg.tgt_vocab, d}});
  out.push_back({"out.b", {cfg.tgt_vocab}});
  return out;
}

std::size_t parameter_count(const ModelConfig& cfg) {
  std::size_t n = 0;
  for (const auto& [name, shape] : param_shapes(cfg)) n += num::shape_size(shape);
  return n;
}

}  // namespace hal::model
