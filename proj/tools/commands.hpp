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
#include <vector>

#include "run_config.hpp"

namespace hal::cli {

struct Command {
  std::string name;
  std::string summary;
  std::vector<KeySpec> keys;
  int (*run)(const RunConfig&);
};

/// Every subcommand in display order.
const std::vector<Command>& commands();

int cmd_preprocess(const RunConfig& rc);
int cmd_train(const RunConfig& rc);
int cmd_finetune(const RunConfig& rc);
int cmd_decode(const RunConfig& rc);
int cmd_evaluate(const RunConfig& rc);
int cmd_augment(const RunConfig& rc);
int cmd_synthcorpus(const RunConfig& rc);

}  // namespace hal::cli
