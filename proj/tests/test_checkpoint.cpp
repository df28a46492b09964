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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "gie/checkpoint.hpp"
#include "support.hpp"

using namespace gie;
using namespace gie::test;

namespace {

TripleStore small_store() {
  const std::vector<RawTriple> train = {{"alpha", "r", "beta"}, {"beta", "s", "gamma"}};
  const std::vector<RawTriple> test = {{"gamma", "r", "alpha"}};
  return TripleStore::from_raw(train, {}, test);
}

Checkpoint make_checkpoint(const TripleStore& store, Geometry g = Geometry::kSpherical) {
  Checkpoint c;
  c.model = init_model({store.num_entities(), store.num_relations(), 6, g}, 17);
  // Values whose bit patterns a text round trip would lose.
  auto& p = c.model.params();
  p.bias_head[0] = 0.1 + 0.2;
  p.bias_tail[1] = -0.0;
  p.translation[3] = std::nextafter(1.0, 2.0);
  p.entity[2] = 4.9e-324;
  p.curvature = {0.731, 1.0 / 3.0, 2.5};
  c.entities = store.entities();
  c.relations = store.relations();
  c.seed = 0xDEADBEEFCAFEull;
  c.epoch = 42;
  return c;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

ErrorCode load_error(const std::filesystem::path& file) {
  try {
    load_checkpoint(file);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("save then load is bit-exact") {
  TempDir dir;
  const auto store = small_store();
  for (auto g : {Geometry::kEuclidean, Geometry::kHyperbolic, Geometry::kSpherical}) {
    const auto c = make_checkpoint(store, g);
    save_checkpoint(dir / "m.gie", c);
    const auto back = load_checkpoint(dir / "m.gie");
    CHECK(back.model.dims() == c.model.dims());
    for (auto group : kAllParamGroups) {
      CHECK_MESSAGE(bit_equal(back.model.params().group(group), c.model.params().group(group)),
                    param_group_name(group));
    }
    CHECK(std::signbit(back.model.params().bias_tail[1]));
    CHECK(back.entities == c.entities);
    CHECK(back.relations == c.relations);
    CHECK(back.seed == c.seed);
    CHECK(back.epoch == 42);
    // Saving the loaded checkpoint reproduces the file byte for byte.
    save_checkpoint(dir / "again.gie", back);
    CHECK(read_file(dir / "m.gie") == read_file(dir / "again.gie"));
    CHECK(back.model.score(0, 1, 2) == c.model.score(0, 1, 2));
  }
}

TEST_CASE("file layout") {
  TempDir dir;
  const auto store = small_store();
  const auto c = make_checkpoint(store);
  save_checkpoint(dir / "m.gie", c);
  const auto bytes = read_file(dir / "m.gie");
  REQUIRE(bytes.size() > 56);
  CHECK(bytes.compare(0, 8, std::string("GIECKPT\0", 8)) == 0);
  auto u32_at = [&](std::size_t off) {
    std::uint32_t v;
    std::memcpy(&v, bytes.data() + off, 4);
    return v;
  };
  auto u64_at = [&](std::size_t off) {
    std::uint64_t v;
    std::memcpy(&v, bytes.data() + off, 8);
    return v;
  };
  CHECK(u32_at(8) == kCheckpointVersion);
  CHECK(u32_at(12) == 2);  // spherical
  CHECK(u64_at(16) == 6);
  CHECK(u64_at(24) == 3);
  CHECK(u64_at(32) == 4);
  CHECK(u64_at(40) == c.seed);
  CHECK(u64_at(48) == 42);
  CHECK(u32_at(56) == 5);
  CHECK(bytes.compare(60, 5, "alpha") == 0);

  std::size_t names = 0;
  for (const auto& n : store.entities().names()) names += 4 + n.size();
  for (const auto& n : store.relations().names()) names += 4 + n.size();
  const auto& p = c.model.params();
  const std::size_t params = 8 * kAllParamGroups.size() + 8 * p.size();
  CHECK(bytes.size() == 56 + names + params);
}

TEST_CASE("unreadable checkpoints are Io errors") {
  TempDir dir;
  const auto store = small_store();
  save_checkpoint(dir / "good.gie", make_checkpoint(store));
  const auto good = read_file(dir / "good.gie");

  CHECK(load_error(dir / "missing.gie") == ErrorCode::kIo);

  write_file(dir / "empty.gie", "");
  CHECK(load_error(dir / "empty.gie") == ErrorCode::kIo);

  write_file(dir / "magic.gie", "NOTACKPT" + good.substr(8));
  CHECK(load_error(dir / "magic.gie") == ErrorCode::kIo);

  auto version = good;
  version[8] = 9;
  write_file(dir / "version.gie", version);
  CHECK(load_error(dir / "version.gie") == ErrorCode::kIo);

  for (std::size_t cut : {std::size_t{20}, std::size_t{70}, good.size() - 1}) {
    write_file(dir / "short.gie", good.substr(0, cut));
    CHECK(load_error(dir / "short.gie") == ErrorCode::kIo);
  }

  write_file(dir / "long.gie", good + "x");
  CHECK(load_error(dir / "long.gie") == ErrorCode::kIo);

  // A header claiming an absurd entity count fails without allocating it.
  auto huge = good;
  const std::uint64_t big = std::uint64_t{1} << 60;
  std::memcpy(huge.data() + 24, &big, 8);
  write_file(dir / "huge.gie", huge);
  CHECK(load_error(dir / "huge.gie") == ErrorCode::kIo);

  auto odd = good;
  const std::uint64_t three = 3;
  std::memcpy(odd.data() + 16, &three, 8);
  write_file(dir / "odd.gie", odd);
  CHECK(load_error(dir / "odd.gie") == ErrorCode::kIo);

  CHECK_THROWS_AS(save_checkpoint(dir / "no" / "such" / "dir.gie", make_checkpoint(store)), Error);
}

TEST_CASE("vocabulary checks") {
  const auto store = small_store();
  const auto c = make_checkpoint(store);
  CHECK_NOTHROW(check_vocab(c, store));

  // Same sizes, different names.
  const std::vector<RawTriple> renamed = {{"alpha", "r", "beta"}, {"beta", "s", "delta"}};
  const std::vector<RawTriple> test = {{"delta", "r", "alpha"}};
  const auto other = TripleStore::from_raw(renamed, {}, test);
  REQUIRE(other.num_entities() == store.num_entities());
  try {
    check_vocab(c, other);
    FAIL("expected VocabMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kVocabMismatch);
  }

  Checkpoint bad = c;
  bad.entities = Vocab();
  TempDir dir;
  try {
    save_checkpoint(dir / "bad.gie", bad);
    FAIL("expected VocabMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kVocabMismatch);
  }
}
