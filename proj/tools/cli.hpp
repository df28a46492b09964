// Copyright 2026 The GIE Authors. All Rights Reserved.
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
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "gie/gie.h"

namespace gie::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitDiverged = 3,
};

enum class Format { kText, kStructured };

inline constexpr std::uint64_t kDefaultSyntheticSeed = 7;

struct RunConfig {
  std::filesystem::path data = "data/synthetic";
  std::filesystem::path out = "out";
  std::filesystem::path checkpoint;  // empty: <out>/model.gie
  gie_train_config train{};
  Format format = Format::kText;
  gie_split split = GIE_SPLIT_TEST;
  std::size_t samples = 1000;

  // Library training defaults with threads set to the available cores.
  static RunConfig defaults();

  std::filesystem::path checkpoint_path() const;
};

// Bad flag values, unknown config keys and the like.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sets one field from its textual value; keys match the long flag names.
void set_field(RunConfig& cfg, const std::string& key, const std::string& value);

// Applies a flat key=value file: one assignment per line, '#' starts a
// comment, blank lines are ignored. Returns the keys it assigned.
std::vector<std::string> apply_config_file(RunConfig& cfg, const std::filesystem::path& file);

// Trains, writes the checkpoint and <out>/metrics.log. Epoch lines
// ("epoch<TAB>loss<TAB>valid_mrr") go to the log and to `out`.
int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err);
// Loads the checkpoint and prints filtered ranking metrics.
int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err);
// Prints curvature estimate, Khs and edge count per relation.
int cmd_metrics(const RunConfig& cfg, std::ostream& out, std::ostream& err);
// Writes the synthetic ring/tree/chain dataset to cfg.out.
int cmd_synth(const RunConfig& cfg, std::uint64_t seed, std::ostream& out, std::ostream& err);

// Parses argv (flags override the --config file, which overrides defaults)
// and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gie::cli
