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

#include "gie/data.hpp"

#include <zlib.h>

#include <algorithm>
#include <fstream>
#include <memory>
#include <unordered_set>

#include "gie/error.hpp"
#include "gie/log.hpp"

namespace gie {

std::string_view split_name(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kValid: return "valid";
    case Split::kTest: return "test";
  }
  return "unknown";
}

std::uint32_t Vocab::intern(std::string_view name) {
  auto [it, inserted] =
      ids_.try_emplace(std::string(name), static_cast<std::uint32_t>(names_.size()));
  if (inserted) names_.emplace_back(name);
  return it->second;
}

std::uint32_t Vocab::find(std::string_view name) const {
  const auto it = ids_.find(std::string(name));
  return it == ids_.end() ? static_cast<std::uint32_t>(names_.size()) : it->second;
}

namespace {

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept {
    std::uint64_t h = (static_cast<std::uint64_t>(t.head) << 32) | t.tail;
    h ^= static_cast<std::uint64_t>(t.relation) * 0x9E3779B97F4A7C15ULL;
    return std::hash<std::uint64_t>{}(h);
  }
};

}  // namespace

RelationId TripleStore::inverse_relation(RelationId r) const {
  const auto m = static_cast<RelationId>(num_raw_relations());
  return r < m ? r + m : r - m;
}

std::span<const EntityId> TripleStore::true_tails(EntityId head, RelationId relation) const {
  const auto it = filter_.find(key(head, relation));
  if (it == filter_.end()) return {};
  return it->second;
}

bool TripleStore::is_true(const Triple& t) const {
  const auto tails = true_tails(t.head, t.relation);
  return std::binary_search(tails.begin(), tails.end(), t.tail);
}

TripleStore TripleStore::from_raw(std::span<const RawTriple> train,
                                  std::span<const RawTriple> valid,
                                  std::span<const RawTriple> test) {
  TripleStore store;
  const std::array<std::span<const RawTriple>, 3> raw = {train, valid, test};

  // Entities in first-appearance order (head before tail), relations likewise.
  Vocab raw_relations;
  for (const auto& split : raw) {
    for (const auto& t : split) {
      store.entities_.intern(t.head);
      store.entities_.intern(t.tail);
      raw_relations.intern(t.relation);
    }
  }
  const auto m = static_cast<RelationId>(raw_relations.size());
  store.relations_ = raw_relations;
  for (RelationId r = 0; r < m; ++r) {
    const std::string reverse = raw_relations.name(r) + std::string(kReverseSuffix);
    if (store.relations_.intern(reverse) != r + m) {
      fail(ErrorCode::kInvalidArgument,
           "relation name '" + reverse + "' collides with a generated inverse relation");
    }
  }

  for (int s = 0; s < 3; ++s) {
    auto& out = store.splits_[s];
    std::vector<Triple> unique;
    unique.reserve(raw[s].size());
    std::unordered_set<Triple, TripleHash> seen;
    for (const auto& t : raw[s]) {
      const Triple id{store.entities_.find(t.head), raw_relations.find(t.relation),
                      store.entities_.find(t.tail)};
      if (!seen.insert(id).second) {
        ++store.duplicates_[s];
        continue;
      }
      unique.push_back(id);
    }
    out.reserve(2 * unique.size());
    out = unique;
    for (const auto& t : unique) out.push_back({t.tail, t.relation + m, t.head});
    if (store.duplicates_[s] > 0) {
      log_warning(std::to_string(store.duplicates_[s]) + " duplicate triples dropped from " +
                  std::string(split_name(static_cast<Split>(s))));
    }
  }

  for (const auto& split : store.splits_) {
    for (const auto& t : split) store.filter_[key(t.head, t.relation)].push_back(t.tail);
  }
  for (auto& [k, tails] : store.filter_) {
    std::sort(tails.begin(), tails.end());
    tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
  }

  std::vector<bool> in_train(store.entities_.size(), false);
  for (const auto& t : store.splits_[0]) in_train[t.head] = in_train[t.tail] = true;
  const auto unseen = static_cast<std::size_t>(std::count(in_train.begin(), in_train.end(), false));
  if (unseen > 0) {
    log_warning(std::to_string(unseen) +
                " entities appear only in valid/test; they keep their initial embeddings");
  }
  return store;
}

namespace {

struct GzCloser {
  void operator()(gzFile f) const { gzclose(f); }
};

std::filesystem::path resolve(const std::filesystem::path& file) {
  if (std::filesystem::exists(file)) return file;
  auto gz = file;
  gz += ".gz";
  if (std::filesystem::exists(gz)) return gz;
  fail(ErrorCode::kDatasetNotFound, "dataset file not found: " + file.string());
}

}  // namespace

std::vector<RawTriple> read_triples(const std::filesystem::path& file) {
  const auto path = resolve(file);
  // gzread passes plain files through unchanged.
  std::unique_ptr<gzFile_s, GzCloser> in(gzopen(path.string().c_str(), "rb"));
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());

  std::vector<RawTriple> out;
  std::string content;
  std::array<char, 1 << 16> buf;
  int n = 0;
  while ((n = gzread(in.get(), buf.data(), static_cast<unsigned>(buf.size()))) > 0) {
    content.append(buf.data(), static_cast<std::size_t>(n));
  }
  if (n < 0) fail(ErrorCode::kIo, "read error in " + path.string());

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string::npos) end = content.size();
    std::string_view line(content.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    std::array<std::string_view, 3> fields;
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      const auto field = line.substr(start, tab == std::string_view::npos ? tab : tab - start);
      if (count < 3) fields[count] = field;
      ++count;
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (count != 3 || fields[0].empty() || fields[1].empty() || fields[2].empty()) {
      throw ParseError(path.string(), line_no,
                       path.string() + ":" + std::to_string(line_no) +
                           ": expected head<TAB>relation<TAB>tail, got " +
                           std::to_string(count) + " field(s)");
    }
    out.push_back({std::string(fields[0]), std::string(fields[1]), std::string(fields[2])});
  }
  return out;
}

TripleStore load_dataset(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    fail(ErrorCode::kDatasetNotFound, "dataset directory not found: " + dir.string());
  }
  const auto train = read_triples(dir / "train.txt");
  const auto valid = read_triples(dir / "valid.txt");
  const auto test = read_triples(dir / "test.txt");
  return TripleStore::from_raw(train, valid, test);
}

void write_triples(const std::filesystem::path& file, std::span<const RawTriple> triples) {
  std::ofstream out(file, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write " + file.string());
  for (const auto& t : triples) out << t.head << '\t' << t.relation << '\t' << t.tail << '\n';
}

}  // namespace gie
