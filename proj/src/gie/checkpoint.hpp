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

#include "gie/data.hpp"
#include "gie/model.hpp"

namespace gie {

// Binary checkpoint, little-endian throughout:
//
//   magic      8 bytes  "GIECKPT\0"
//   version    u32      kCheckpointVersion
//   geometry   u32      interaction geometry (0 flat, 1 hyperbolic, 2 spherical)
//   dim, entities, relations, seed, epoch     u64 each
//   entity names, then relation names: u32 byte length + UTF-8 bytes each
//   parameter groups in ParamGroup order: u64 count + count IEEE-754 f64
//
// Doubles are stored bit-for-bit, so save/load round-trips exactly.
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  GieModel model;
  Vocab entities;
  Vocab relations;
  std::uint64_t seed = 0;
  std::uint64_t epoch = 0;
};

void save_checkpoint(const std::filesystem::path& file, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& file);

// Throws VocabMismatch unless the checkpoint was trained on this vocabulary.
void check_vocab(const Checkpoint& ckpt, const TripleStore& store);

}  // namespace gie
