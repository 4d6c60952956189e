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

#include "hal/synth/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "hal/util/io.hpp"

namespace hal::synth {

namespace {

constexpr double kSlack = 1e-9;

std::pair<std::string, Words> parse_arrow(const std::string& item, std::size_t line_no) {
  std::size_t pos = item.find("->");
  std::size_t len = 2;
  if (pos == std::string::npos) {
    pos = item.find("\xE2\x86\x92");  // U+2192
    len = 3;
  }
  if (pos == std::string::npos || pos == 0)
    throw std::invalid_argument("channel line " + std::to_string(line_no) + ": expected src->dst");
  Words dst = split(item.substr(pos + len), '+');
  dst.erase(std::remove(dst.begin(), dst.end(), std::string()), dst.end());
  if (dst.empty()) throw std::invalid_argument("channel line " + std::to_string(line_no) + ": empty replacement");
  return {item.substr(0, pos), dst};
}

double parse_prob(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double p = std::stod(s, &used);
    if (used == s.size() && p >= 0.0 && p <= 1.0) return p;
  } catch (const std::logic_error&) {
  }
  throw std::invalid_argument("channel line " + std::to_string(line_no) + ": bad probability '" + s + "'");
}

std::size_t parse_count(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw std::invalid_argument("channel line " + std::to_string(line_no) + ": bad count '" + s + "'");
}

}  // namespace

Channel Channel::parse(std::string_view spec) {
  Channel ch;
  std::size_t line_no = 0;
  bool have_length = false;
  for (const std::string& raw : split(spec, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const Words f = split_ws(line);
    const std::string& kw = f[0];
    auto want = [&](std::size_t n) {
      if (f.size() != n)
        throw std::invalid_argument("channel line " + std::to_string(line_no) + ": " + kw + " takes " +
                                    std::to_string(n - 1) + " fields");
    };
    if (kw == "VOCAB" || kw == "WORDS") {
      ch.vocab_.insert(ch.vocab_.end(), f.begin() + 1, f.end());
    } else if (kw == "LENGTH") {
      want(3);
      ch.min_len_ = parse_count(f[1], line_no);
      ch.max_len_ = parse_count(f[2], line_no);
      have_length = true;
    } else if (kw == "MAXOUT") {
      want(2);
      ch.max_out_ = parse_count(f[1], line_no);
    } else if (kw == "SUB") {
      want(3);
      auto [src, dst] = parse_arrow(f[1], line_no);
      ch.sub_.emplace(src, Outcome{dst, parse_prob(f[2], line_no)});
    } else if (kw == "DEL") {
      want(3);
      ch.sub_.emplace(f[1], Outcome{{}, parse_prob(f[2], line_no)});
    } else if (kw == "CSUB") {
      want(4);
      auto [src, dst] = parse_arrow(f[2], line_no);
      ch.csub_[{f[1], src}].push_back({dst, parse_prob(f[3], line_no)});
    } else if (kw == "INS") {
      want(3);
      ch.ins_.push_back({{f[1]}, parse_prob(f[2], line_no)});
    } else {
      throw std::invalid_argument("channel line " + std::to_string(line_no) + ": unknown directive '" + kw + "'");
    }
  }
  if (ch.vocab_.empty()) throw std::invalid_argument("channel: VOCAB is required");
  if (!have_length) ch.min_len_ = ch.max_len_ = 1;
  if (ch.min_len_ == 0 || ch.max_len_ < ch.min_len_) throw std::invalid_argument("channel: bad LENGTH range");
  double ins = 0.0;
  for (const auto& o : ch.ins_) ins += o.p;
  if (ins > 1.0 + kSlack) throw std::invalid_argument("channel: INS probabilities exceed 1");
  std::set<std::string> words(ch.vocab_.begin(), ch.vocab_.end());
  for (const auto& [k, v] : ch.sub_) words.insert(k);
  for (const auto& [k, v] : ch.csub_) words.insert(k.second);
  for (const auto& w : words) {
    double base = 0.0;
    auto [lo, hi] = ch.sub_.equal_range(w);
    for (auto it = lo; it != hi; ++it) base += it->second.p;
    double worst = 0.0;
    for (const auto& [key, outs] : ch.csub_) {
      if (key.second != w) continue;
      double s = 0.0;
      for (const auto& o : outs) s += o.p;
      worst = std::max(worst, s);
    }
    if (base + worst > 1.0 + kSlack)
      throw std::invalid_argument("channel: rewrite probabilities for '" + w + "' exceed 1");
  }
  return ch;
}

Channel Channel::load(const std::string& path) { return parse(read_file(path)); }

std::vector<Channel::Outcome> Channel::word_outcomes(const std::string* left, const std::string& word) const {
  std::vector<Outcome> out;
  double used = 0.0;
  if (left) {
    auto it = csub_.find({*left, word});
    if (it != csub_.end()) {
      for (const auto& o : it->second) {
        out.push_back(o);
        used += o.p;
      }
    }
  }
  auto [lo, hi] = sub_.equal_range(word);
  for (auto it = lo; it != hi; ++it) {
    out.push_back(it->second);
    used += it->second.p;
  }
  out.push_back({{word}, std::max(0.0, 1.0 - used)});
  return out;
}

Words Channel::sample_source(Rng& rng) const {
  const std::size_t len = min_len_ + static_cast<std::size_t>(rng.below(max_len_ - min_len_ + 1));
  Words out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(vocab_[rng.below(vocab_.size())]);
  return out;
}

Words Channel::corrupt(const Words& source, Rng& rng) const {
  Words out;
  std::vector<double> w;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const auto outs = word_outcomes(i > 0 ? &source[i - 1] : nullptr, source[i]);
    w.clear();
    for (const auto& o : outs) w.push_back(o.p);
    const auto& pick = outs[rng.categorical(w)];
    out.insert(out.end(), pick.words.begin(), pick.words.end());
    if (!ins_.empty()) {
      const double u = rng.uniform();
      double acc = 0.0;
      for (const auto& o : ins_) {
        acc += o.p;
        if (u < acc) {
          out.push_back(o.words.front());
          break;
        }
      }
    }
  }
  return out;
}

std::vector<std::pair<Words, double>> Channel::enumerate(const Words& source, std::size_t limit) const {
  std::map<Words, double> cur{{Words{}, 1.0}};
  double none = 1.0;
  for (const auto& o : ins_) none -= o.p;
  none = std::max(0.0, none);
  for (std::size_t i = 0; i < source.size(); ++i) {
    std::vector<Outcome> outs;
    for (const auto& o : word_outcomes(i > 0 ? &source[i - 1] : nullptr, source[i])) {
      if (o.p <= 0.0) continue;
      if (ins_.empty()) {
        outs.push_back(o);
        continue;
      }
      if (none > 0.0) outs.push_back({o.words, o.p * none});
      for (const auto& ins : ins_) {
        if (ins.p <= 0.0) continue;
        Words w = o.words;
        w.push_back(ins.words.front());
        outs.push_back({w, o.p * ins.p});
      }
    }
    std::map<Words, double> next;
    for (const auto& [prefix, p] : cur) {
      for (const auto& o : outs) {
        Words w = prefix;
        w.insert(w.end(), o.words.begin(), o.words.end());
        next[std::move(w)] += p * o.p;
        if (next.size() > limit) throw std::length_error("channel output distribution too large to enumerate");
      }
    }
    cur = std::move(next);
  }
  std::vector<std::pair<Words, double>> out(cur.begin(), cur.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

Words Channel::output_words() const {
  std::set<std::string> words(vocab_.begin(), vocab_.end());
  for (const auto& [k, o] : sub_) words.insert(o.words.begin(), o.words.end());
  for (const auto& [k, outs] : csub_)
    for (const auto& o : outs) words.insert(o.words.begin(), o.words.end());
  for (const auto& o : ins_) words.insert(o.words.begin(), o.words.end());
  return Words(words.begin(), words.end());
}

std::vector<text::CorpusRecord> synthesize(const Channel& channel, std::size_t n, std::uint64_t seed,
                                           const std::string& id_prefix) {
  std::vector<text::CorpusRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, i));
    Words src;
    for (int attempt = 0;; ++attempt) {
      if (attempt == 1000) throw std::runtime_error("channel: no source within MAXOUT after 1000 draws");
      src = channel.sample_source(rng);
      if (channel.max_outputs() == 0 || channel.enumerate(src).size() <= channel.max_outputs()) break;
    }
    Words noisy = channel.corrupt(src, rng);
    out.push_back({id_prefix + std::to_string(i), join(src, " "), join(noisy, " "), {}});
  }
  return out;
}

DistributionModel::DistributionModel(const std::vector<std::pair<std::vector<text::Token>, double>>& dist,
                                     std::size_t vocab, text::Token eos)
    : nodes_(1), vocab_(vocab), eos_(eos) {
  for (const auto& [seq, p] : dist) {
    if (!(p >= 0.0)) throw std::invalid_argument("distribution model: negative probability");
    std::size_t n = 0;
    nodes_[0].mass += p;
    for (text::Token t : seq) {
      if (t == eos || t >= vocab) throw std::invalid_argument("distribution model: bad token in sequence");
      auto it = nodes_[n].children.find(t);
      std::size_t child;
      if (it == nodes_[n].children.end()) {
        child = nodes_.size();
        nodes_[n].children.emplace(t, child);
        nodes_.emplace_back();
      } else {
        child = it->second;
      }
      n = child;
      nodes_[n].mass += p;
    }
    nodes_[n].end += p;
  }
  if (!(nodes_[0].mass > 0.0)) throw std::invalid_argument("distribution model: zero total mass");
  rows_.assign(1, 0);
}

void DistributionModel::log_probs(std::vector<double>& out) {
  out.assign(rows_.size() * vocab_, -std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Node& n = nodes_[rows_[r]];
    double* o = out.data() + r * vocab_;
    for (const auto& [t, c] : n.children)
      if (nodes_[c].mass > 0.0) o[t] = std::log(nodes_[c].mass / n.mass);
    if (n.end > 0.0) o[eos_] = std::log(n.end / n.mass);
  }
}

void DistributionModel::advance(std::span<const std::size_t> parents, std::span<const text::Token> tokens) {
  std::vector<std::size_t> next(parents.size());
  for (std::size_t r = 0; r < parents.size(); ++r) {
    const Node& n = nodes_[rows_.at(parents[r])];
    auto it = n.children.find(tokens[r]);
    if (it == n.children.end()) throw std::invalid_argument("distribution model: impossible token");
    next[r] = it->second;
  }
  rows_ = std::move(next);
}

}  // namespace hal::synth
