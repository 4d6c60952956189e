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

#include "hal/model/checkpoint.hpp"

#include <bit>
#include <cstring>

#include "hal/model/params.hpp"
#include "hal/util/hash.hpp"
#include "hal/util/io.hpp"

namespace hal::model {

namespace {

class Writer {
 public:
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u64(s.size());
    out_.append(s);
  }
  void raw(std::string_view s) { out_.append(s); }
  void tensors(const std::vector<std::string>& names, const std::vector<const num::Tensor<float>*>& ts) {
    u32(static_cast<std::uint32_t>(ts.size()));
    for (std::size_t i = 0; i < ts.size(); ++i) {
      str(names[i]);
      u32(static_cast<std::uint32_t>(ts[i]->rank()));
      for (auto d : ts[i]->shape()) u64(d);
      for (float v : ts[i]->data()) f32(v);
    }
  }
  std::string take() { return std::move(out_); }

 private:
  void put(std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  float f32() { return std::bit_cast<float>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint64_t n = u64();
    need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::string_view raw(std::size_t n) {
    need(n);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  num::Tensor<float> tensor(std::string& name) {
    name = str();
    const std::uint32_t rank = u32();
    if (rank > 8) throw CheckpointError("checkpoint: tensor '" + name + "' has implausible rank");
    num::Shape shape(rank);
    std::uint64_t count = 1;
    for (auto& d : shape) {
      d = u64();
      count *= d;
    }
    need(count * 4);
    std::vector<float> data(count);
    for (auto& v : data) v = f32();
    return num::Tensor<float>(shape, std::move(data));
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::uint64_t n) const {
    if (n > in_.size() - pos_) throw CheckpointError("checkpoint: truncated file");
  }
  std::uint64_t get(int bytes) {
    need(static_cast<std::uint64_t>(bytes));
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
    pos_ += static_cast<std::size_t>(bytes);
    return v;
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

const VocabRef& Checkpoint::vocab(std::string_view role) const {
  for (const auto& v : vocabs)
    if (v.role == role) return v;
  throw CheckpointError("checkpoint has no '" + std::string(role) + "' vocabulary");
}

std::string serialize_checkpoint(const Checkpoint& ck) {
  Writer w;
  w.raw("AHLC");
  w.u32(Checkpoint::kVersion);
  w.str(ck.config.serialize());
  std::vector<std::string> names;
  std::vector<const num::Tensor<float>*> values;
  for (std::size_t i = 0; i < ck.params.size(); ++i) {
    names.push_back(ck.params.name(i));
    values.push_back(&ck.params.value(i));
  }
  w.tensors(names, values);
  std::vector<const num::Tensor<float>*> vel;
  for (const auto& v : ck.optimizer.velocity) vel.push_back(&v);
  names.resize(vel.size());
  w.tensors(names, vel);
  w.f64(static_cast<double>(ck.optimizer.lr));
  w.f64(static_cast<double>(ck.optimizer.momentum));
  w.u64(ck.epoch);
  w.f64(ck.best_valid);
  w.u32(static_cast<std::uint32_t>(ck.vocabs.size()));
  for (const auto& v : ck.vocabs) {
    w.str(v.role);
    w.str(v.path);
    w.u64(v.hash);
    w.str(v.contents);
  }
  return w.take();
}

Checkpoint parse_checkpoint(std::string_view bytes) {
  Reader r(bytes);
  if (bytes.size() < 4 || r.raw(4) != "AHLC") throw CheckpointError("checkpoint: bad magic");
  const std::uint32_t version = r.u32();
  if (version != Checkpoint::kVersion)
    throw CheckpointError("checkpoint: unsupported format version " + std::to_string(version));
  Checkpoint ck;
  try {
    ck.config = ModelConfig::parse(r.str());
    ck.config.validate();
  } catch (const std::invalid_argument& e) {
    throw CheckpointError(std::string("checkpoint: ") + e.what());
  }
  const std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string name;
    auto t = r.tensor(name);
    if (!t.all_finite()) throw CheckpointError("checkpoint: parameter '" + name + "' is not finite");
    ck.params.add(name, std::move(t));
  }
  try {
    check_params(ck.config, ck.params);
  } catch (const std::invalid_argument& e) {
    throw CheckpointError(std::string("checkpoint: ") + e.what());
  }
  const std::uint32_t nv = r.u32();
  if (nv != 0 && nv != n) throw CheckpointError("checkpoint: velocity count does not match parameters");
  for (std::uint32_t i = 0; i < nv; ++i) {
    std::string name;
    auto t = r.tensor(name);
    if (t.shape() != ck.params.value(i).shape()) throw CheckpointError("checkpoint: velocity shape mismatch");
    ck.optimizer.velocity.push_back(std::move(t));
  }
  if (nv == 0) ck.optimizer.velocity.clear();
  ck.optimizer.lr = static_cast<float>(r.f64());
  ck.optimizer.momentum = static_cast<float>(r.f64());
  ck.epoch = r.u64();
  ck.best_valid = r.f64();
  const std::uint32_t nvocab = r.u32();
  for (std::uint32_t i = 0; i < nvocab; ++i) {
    VocabRef v;
    v.role = r.str();
    v.path = r.str();
    v.hash = r.u64();
    v.contents = r.str();
    if (fnv1a64(v.contents) != v.hash)
      throw CheckpointError("checkpoint: '" + v.role + "' vocabulary does not match its recorded hash");
    ck.vocabs.push_back(std::move(v));
  }
  if (!r.done()) throw CheckpointError("checkpoint: trailing bytes");
  return ck;
}

void save_checkpoint(const std::string& path, const Checkpoint& ck) {
  write_file_atomic(path, serialize_checkpoint(ck));
}

Checkpoint load_checkpoint(const std::string& path) { return parse_checkpoint(read_file(path)); }

}  // namespace hal::model
