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
#include <vector>

#include "gie/data.hpp"

namespace gie {

struct SyntheticKg {
  std::vector<RawTriple> train;
  std::vector<RawTriple> valid;
  std::vector<RawTriple> test;
};

// A 60-entity graph with three relation families:
//   ring   20 entities on a cycle, symmetric `adjacent_to` in both directions
//   tree   20-node binary hierarchy, `subclass_of` (child -> parent) and
//          `has_subclass` (parent -> child)
//   chain  20-step path, `next` (i -> i+1) and `previous` (i+1 -> i)
// Every fact has a mirror fact (its symmetric or inverse partner). Held-out
// triples are drawn from distinct mirror pairs so each one stays inferable
// from the training graph. The valid split is empty.
SyntheticKg make_synthetic_kg(std::uint64_t seed, double test_fraction = 0.1);

// Writes dir/{train,valid,test}.txt, creating dir if needed.
void write_dataset(const std::filesystem::path& dir, const SyntheticKg& kg);

}  // namespace gie
