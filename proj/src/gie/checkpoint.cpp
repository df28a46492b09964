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

#include "gie/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "gie/error.hpp"

namespace gie {
namespace {

constexpr std::array<char, 8> kMagic = {'G', 'I', 'E', 'C', 'K', 'P', 'T', '\0'};

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

class Writer {
 public:
  explicit Writer(const std::filesystem::path& file) : out_(file, std::ios::binary) {
    if (!out_) fail(ErrorCode::kIo, "cannot write checkpoint " + file.string());
  }
  void bytes(const void* p, std::size_t n) { out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); }
  void u32(std::uint32_t v) { bytes(&v, sizeof v); }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }
  void finish(const std::filesystem::path& file) {
    out_.flush();
    if (!out_) fail(ErrorCode::kIo, "error writing checkpoint " + file.string());
  }

 private:
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& file) : file_(file), in_(file, std::ios::binary) {
    if (!in_) fail(ErrorCode::kIo, "cannot open checkpoint " + file.string());
    std::error_code ec;
    remaining_ = std::filesystem::file_size(file, ec);
    if (ec) fail(ErrorCode::kIo, "cannot open checkpoint " + file.string());
  }
  // Counts read from the header are checked against the bytes left before
  // anything is allocated for them.
  void expect(std::uint64_t count, std::uint64_t size) {
    if (size != 0 && count > remaining_ / size) {
      fail(ErrorCode::kIo, "truncated checkpoint " + file_.string());
    }
  }
  void bytes(void* p, std::size_t n) {
    expect(n, 1);
    in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (!in_) fail(ErrorCode::kIo, "truncated checkpoint " + file_.string());
    remaining_ -= n;
  }
  bool at_end() const { return remaining_ == 0; }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    bytes(&v, sizeof v);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    bytes(&v, sizeof v);
    return v;
  }
  std::string str() {
    const auto n = u32();
    expect(n, 1);
    std::string s(n, '\0');
    bytes(s.data(), s.size());
    return s;
  }

 private:
  std::filesystem::path file_;
  std::ifstream in_;
  std::uint64_t remaining_ = 0;
};

}  // namespace

void save_checkpoint(const std::filesystem::path& file, const Checkpoint& ckpt) {
  const auto& dims = ckpt.model.dims();
  if (ckpt.entities.size() != dims.num_entities || ckpt.relations.size() != dims.num_relations) {
    fail(ErrorCode::kVocabMismatch, "checkpoint vocabulary does not match model dimensions");
  }
  Writer w(file);
  w.bytes(kMagic.data(), kMagic.size());
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(dims.interaction));
  w.u64(dims.dim);
  w.u64(dims.num_entities);
  w.u64(dims.num_relations);
  w.u64(ckpt.seed);
  w.u64(ckpt.epoch);
  for (const auto& n : ckpt.entities.names()) w.str(n);
  for (const auto& n : ckpt.relations.names()) w.str(n);
  for (auto g : kAllParamGroups) {
    const auto& values = ckpt.model.params().group(g);
    w.u64(values.size());
    w.bytes(values.data(), values.size() * sizeof(double));
  }
  w.finish(file);
}

Checkpoint load_checkpoint(const std::filesystem::path& file) {
  Reader r(file);
  std::array<char, 8> magic{};
  r.bytes(magic.data(), magic.size());
  if (magic != kMagic) fail(ErrorCode::kIo, file.string() + " is not a checkpoint");
  const auto version = r.u32();
  if (version != kCheckpointVersion) {
    fail(ErrorCode::kIo, "unsupported checkpoint version " + std::to_string(version));
  }
  const auto geometry = r.u32();
  if (geometry > 2) fail(ErrorCode::kIo, "bad interaction geometry in checkpoint");
  ModelDims dims;
  dims.interaction = static_cast<Geometry>(geometry);
  dims.dim = r.u64();
  dims.num_entities = r.u64();
  dims.num_relations = r.u64();
  if (dims.dim == 0 || dims.dim % 2 != 0) fail(ErrorCode::kIo, "bad dimension in checkpoint");
  // Every entity and relation needs at least a name length and its
  // parameters; reject absurd headers before allocating.
  r.expect(dims.dim, sizeof(double));
  r.expect(dims.num_entities, sizeof(std::uint32_t) + (dims.dim + 2) * sizeof(double));
  r.expect(dims.num_relations, sizeof(std::uint32_t) + (dims.dim / 2 + 3 * dims.dim) * sizeof(double));

  Checkpoint ckpt;
  ckpt.seed = r.u64();
  ckpt.epoch = r.u64();
  for (std::size_t i = 0; i < dims.num_entities; ++i) ckpt.entities.intern(r.str());
  for (std::size_t i = 0; i < dims.num_relations; ++i) ckpt.relations.intern(r.str());
  if (ckpt.entities.size() != dims.num_entities || ckpt.relations.size() != dims.num_relations) {
    fail(ErrorCode::kIo, "duplicate names in checkpoint vocabulary");
  }

  Parameters params = Parameters::zeros(dims);
  for (auto g : kAllParamGroups) {
    auto& values = params.group(g);
    if (r.u64() != values.size()) {
      fail(ErrorCode::kIo, "parameter group " + std::string(param_group_name(g)) +
                               " has wrong size in checkpoint");
    }
    r.bytes(values.data(), values.size() * sizeof(double));
  }
  if (!r.at_end()) fail(ErrorCode::kIo, "trailing bytes in checkpoint " + file.string());
  ckpt.model = GieModel(dims, std::move(params));
  return ckpt;
}

void check_vocab(const Checkpoint& ckpt, const TripleStore& store) {
  if (!(ckpt.entities == store.entities()) || !(ckpt.relations == store.relations())) {
    fail(ErrorCode::kVocabMismatch,
         "checkpoint vocabulary (" + std::to_string(ckpt.entities.size()) + " entities, " +
             std::to_string(ckpt.relations.size()) + " relations) does not match dataset (" +
             std::to_string(store.num_entities()) + " entities, " +
             std::to_string(store.num_relations()) + " relations)");
  }
}

}  // namespace gie
