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
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hal/model/config.hpp"
#include "hal/num/graph.hpp"
#include "hal/num/nesterov.hpp"

namespace hal::model {

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vocabulary the model was trained with: where it came from, its content
/// hash, and its contents so the checkpoint is usable on its own.
struct VocabRef {
  std::string role;  ///< "src", "tgt" or "phone"
  std::string path;
  std::uint64_t hash = 0;
  std::string contents;
  friend bool operator==(const VocabRef&, const VocabRef&) = default;
};

struct Checkpoint {
  static constexpr std::uint32_t kVersion = 1;

  ModelConfig config;
  num::ParamSet<float> params;
  num::NesterovState<float> optimizer;
  std::uint64_t epoch = 0;
  double best_valid = std::numeric_limits<double>::infinity();
  std::vector<VocabRef> vocabs;

  /// Entry for \p role; throws CheckpointError if absent.
  const VocabRef& vocab(std::string_view role) const;
};

/// Little-endian layout:
///   "AHLC" u32 version
///   str config                        (key=value lines)
///   u32 count { str name, u32 rank, u64 dims[rank], f32 data[] }   parameters
///   u32 count { same }                                            velocities
///   f64 lr, f64 momentum, u64 epoch, f64 best_valid
///   u32 count { str role, str path, u64 hash, str contents }       vocabularies
/// where str is u64 length followed by bytes.
std::string serialize_checkpoint(const Checkpoint& ck);
/// Throws CheckpointError on bad magic, unknown version, truncation, trailing
/// bytes, vocabulary hash mismatch or parameters that do not fit the config.
Checkpoint parse_checkpoint(std::string_view bytes);

void save_checkpoint(const std::string& path, const Checkpoint& ck);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace hal::model
