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

// Triple datasets: vocabularies, inverse-relation augmentation and the
// filter index used for filtered ranking.

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gie {

using EntityId = std::uint32_t;
using RelationId = std::uint32_t;

struct Triple {
  EntityId head = 0;
  RelationId relation = 0;
  EntityId tail = 0;

  friend bool operator==(const Triple&, const Triple&) = default;
};

enum class Split { kTrain = 0, kValid = 1, kTest = 2 };

std::string_view split_name(Split split);

// Bidirectional string <-> dense id map; ids follow first appearance.
class Vocab {
 public:
  std::uint32_t intern(std::string_view name);
  // Returns size() when absent.
  std::uint32_t find(std::string_view name) const;
  const std::string& name(std::uint32_t id) const { return names_.at(id); }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  friend bool operator==(const Vocab& a, const Vocab& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

struct RawTriple {
  std::string head;
  std::string relation;
  std::string tail;
};

inline constexpr std::string_view kReverseSuffix = "_reverse";

class TripleStore {
 public:
  // Builds vocabularies over train, valid, test (in that order), drops
  // duplicates within a split, appends inverse triples and indexes every
  // true triple for filtering.
  static TripleStore from_raw(std::span<const RawTriple> train, std::span<const RawTriple> valid,
                              std::span<const RawTriple> test);

  const Vocab& entities() const noexcept { return entities_; }
  // Augmented: ids [0, M) are raw relations, id j + M is the inverse of j.
  const Vocab& relations() const noexcept { return relations_; }
  std::size_t num_entities() const noexcept { return entities_.size(); }
  std::size_t num_relations() const noexcept { return relations_.size(); }
  std::size_t num_raw_relations() const noexcept { return relations_.size() / 2; }

  RelationId inverse_relation(RelationId r) const;
  RelationId raw_relation(RelationId r) const { return r % num_raw_relations(); }

  // Augmented split: the raw triples come first, then their inverses in the
  // same order.
  std::span<const Triple> split(Split s) const { return splits_[static_cast<int>(s)]; }
  std::span<const Triple> raw_split(Split s) const {
    const auto all = split(s);
    return all.first(all.size() / 2);
  }

  // True tails for (head, relation) over all splits, sorted.
  std::span<const EntityId> true_tails(EntityId head, RelationId relation) const;
  bool is_true(const Triple& t) const;

  // Duplicate lines dropped per split while loading.
  std::size_t duplicates(Split s) const { return duplicates_[static_cast<int>(s)]; }

 private:
  static std::uint64_t key(EntityId h, RelationId r) {
    return (static_cast<std::uint64_t>(h) << 32) | r;
  }

  Vocab entities_;
  Vocab relations_;
  std::array<std::vector<Triple>, 3> splits_;
  std::array<std::size_t, 3> duplicates_{};
  std::unordered_map<std::uint64_t, std::vector<EntityId>> filter_;
};

// Reads one "head<TAB>relation<TAB>tail" file; `name.gz` is used when the
// plain file is absent.
std::vector<RawTriple> read_triples(const std::filesystem::path& file);

// Loads dir/{train,valid,test}.txt.
TripleStore load_dataset(const std::filesystem::path& dir);

void write_triples(const std::filesystem::path& file, std::span<const RawTriple> triples);

}  // namespace gie
