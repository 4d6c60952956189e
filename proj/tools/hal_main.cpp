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

#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "hal/model/checkpoint.hpp"

#ifndef HAL_VERSION
#define HAL_VERSION "unknown"
#endif

namespace {

constexpr int kValidation = 2;
constexpr int kRuntime = 1;

}  // namespace

int main(int argc, char** argv) {
  using hal::cli::RunConfig;
  CLI::App app{"hal: hallucinated ASR error generation"};
  app.set_version_flag("--version", HAL_VERSION);
  app.require_subcommand(1);

  struct Bound {
    CLI::App* sub;
    const hal::cli::Command* cmd;
    std::string config;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
  };
  std::vector<Bound> bound(hal::cli::commands().size());
  for (std::size_t i = 0; i < bound.size(); ++i) {
    auto& b = bound[i];
    b.cmd = &hal::cli::commands()[i];
    b.sub = app.add_subcommand(b.cmd->name, b.cmd->summary);
    b.sub->add_option("--config", b.config, "key=value settings file; flags override it");
    for (const auto& k : b.cmd->keys) {
      std::string help = k.help;
      if (!k.fallback.empty()) help += " [" + k.fallback + "]";
      if (k.required) help += " (required)";
      b.options[k.key] = b.sub->add_option("--" + k.key, b.values[k.key], help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  for (auto& b : bound) {
    if (!b.sub->parsed()) continue;
    const std::string name = b.cmd->name;
    try {
      RunConfig rc(name, b.cmd->keys);
      if (!b.config.empty()) rc.load_file(b.config);
      for (const auto& k : b.cmd->keys)
        if (b.options[k.key]->count() > 0) rc.set(k.key, b.values[k.key]);
      rc.check_required();
      std::cerr << name << ": effective config\n" << rc.echo();
      return b.cmd->run(rc);
    } catch (const hal::model::CheckpointError& e) {
      std::cerr << name << ": " << e.what() << "\n";
      return kValidation;
    } catch (const std::logic_error& e) {
      std::cerr << name << ": " << e.what() << "\n";
      return kValidation;
    } catch (const std::exception& e) {
      std::cerr << name << ": " << e.what() << "\n";
      return kRuntime;
    }
  }
  return kValidation;
}
