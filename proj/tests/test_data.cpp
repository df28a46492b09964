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

#include <zlib.h>

#include <mutex>

#include "gie/data.hpp"
#include "gie/error.hpp"
#include "gie/log.hpp"
#include "support.hpp"

using namespace gie;
using namespace gie::test;

namespace {

// Collects warnings for the lifetime of the object.
class CapturedLog {
 public:
  CapturedLog() {
    set_log_sink([this](LogLevel level, std::string_view msg) {
      std::lock_guard lock(mu_);
      if (level == LogLevel::kWarning) warnings_.emplace_back(msg);
    });
  }
  ~CapturedLog() { set_log_sink({}); }

  std::vector<std::string> warnings() {
    std::lock_guard lock(mu_);
    return warnings_;
  }

 private:
  std::mutex mu_;
  std::vector<std::string> warnings_;
};

void write_dataset_files(const TempDir& dir, std::string_view train, std::string_view valid,
                         std::string_view test) {
  write_file(dir / "train.txt", train);
  write_file(dir / "valid.txt", valid);
  write_file(dir / "test.txt", test);
}

ErrorCode load_error(const std::filesystem::path& dir) {
  try {
    load_dataset(dir);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("a one-line training file") {
  TempDir dir;
  write_dataset_files(dir, "a\tr\tb\n", "", "");
  const auto store = load_dataset(dir.path());
  CHECK(store.num_entities() == 2);
  CHECK(store.num_raw_relations() == 1);
  CHECK(store.num_relations() == 2);
  REQUIRE(store.split(Split::kTrain).size() == 2);
  CHECK(store.split(Split::kTrain)[0] == Triple{0, 0, 1});
  CHECK(store.split(Split::kTrain)[1] == Triple{1, 1, 0});
  CHECK(store.raw_split(Split::kTrain).size() == 1);
  CHECK(store.relations().name(0) == "r");
  CHECK(store.relations().name(1) == "r_reverse");
  CHECK(store.entities().name(0) == "a");
  CHECK(store.entities().name(1) == "b");
  CHECK(store.split(Split::kValid).empty());
  CHECK(store.split(Split::kTest).empty());
}

TEST_CASE("ids follow first appearance and loading is deterministic") {
  TempDir dir;
  write_dataset_files(dir, "z\tp\ty\ny\tq\tx\nx\tp\tz\n", "w\tq\tz\n", "y\tp\tw\n");
  const auto a = load_dataset(dir.path());
  const auto b = load_dataset(dir.path());
  CHECK(a.entities().names() == std::vector<std::string>{"z", "y", "x", "w"});
  CHECK(a.relations().names() == std::vector<std::string>{"p", "q", "p_reverse", "q_reverse"});
  CHECK(a.entities() == b.entities());
  CHECK(a.relations() == b.relations());
  for (auto s : {Split::kTrain, Split::kValid, Split::kTest}) {
    CHECK(std::ranges::equal(a.split(s), b.split(s)));
  }
}

TEST_CASE("augmentation and inverse ids") {
  const std::vector<RawTriple> train = {{"a", "r", "b"}, {"b", "s", "c"}, {"c", "r", "a"}};
  const std::vector<RawTriple> test = {{"a", "s", "c"}};
  const auto store = TripleStore::from_raw(train, {}, test);
  const auto m = static_cast<RelationId>(store.num_raw_relations());
  REQUIRE(m == 2);
  for (RelationId j = 0; j < m; ++j) {
    CHECK(store.inverse_relation(j) == j + m);
    CHECK(store.inverse_relation(j + m) == j);
    CHECK(store.raw_relation(j + m) == j);
    CHECK(store.relations().name(j + m) == store.relations().name(j) + "_reverse");
  }
  for (auto s : {Split::kTrain, Split::kTest}) {
    const auto all = store.split(s);
    const auto raw = store.raw_split(s);
    REQUIRE(all.size() == 2 * raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const Triple inv = all[raw.size() + i];
      CHECK(inv == Triple{raw[i].tail, raw[i].relation + m, raw[i].head});
    }
  }
}

TEST_CASE("filter index covers every split") {
  const std::vector<RawTriple> train = {{"a", "r", "b"}, {"a", "r", "c"}};
  const std::vector<RawTriple> valid = {{"a", "r", "d"}};
  const std::vector<RawTriple> test = {{"a", "r", "e"}, {"b", "r", "a"}};
  const auto store = TripleStore::from_raw(train, valid, test);
  for (auto s : {Split::kTrain, Split::kValid, Split::kTest}) {
    for (const auto& t : store.split(s)) CHECK(store.is_true(t));
  }
  const auto tails = store.true_tails(store.entities().find("a"), 0);
  CHECK(std::vector<EntityId>(tails.begin(), tails.end()) == std::vector<EntityId>{1, 2, 3, 4});
  CHECK(store.true_tails(store.entities().find("e"), 0).empty());
  CHECK_FALSE(store.is_true({store.entities().find("c"), 0, store.entities().find("a")}));
  // Through the inverse relation: a is a true head for b and for e.
  const auto heads_of_b = store.true_tails(store.entities().find("b"), 1);
  CHECK(std::vector<EntityId>(heads_of_b.begin(), heads_of_b.end()) ==
        std::vector<EntityId>{store.entities().find("a")});
}

TEST_CASE("duplicates are dropped and reported") {
  CapturedLog log;
  const std::vector<RawTriple> train = {{"a", "r", "b"}, {"a", "r", "b"}, {"b", "r", "a"}, {"a", "r", "b"}};
  const std::vector<RawTriple> test = {{"a", "r", "b"}};
  const auto store = TripleStore::from_raw(train, {}, test);
  CHECK(store.duplicates(Split::kTrain) == 2);
  CHECK(store.duplicates(Split::kTest) == 0);
  CHECK(store.split(Split::kTrain).size() == 4);
  // The same fact in another split is not a duplicate.
  CHECK(store.split(Split::kTest).size() == 2);
  const auto w = log.warnings();
  REQUIRE(w.size() == 1);
  CHECK(w[0].find("2 duplicate") != std::string::npos);
}

TEST_CASE("entities unseen in training are kept with a warning") {
  CapturedLog log;
  TempDir dir;
  write_dataset_files(dir, "a\tr\tb\n", "", "a\tr\tc\n");
  const auto store = load_dataset(dir.path());
  CHECK(store.num_entities() == 3);
  CHECK(store.entities().find("c") == 2);
  const auto w = log.warnings();
  REQUIRE(w.size() == 1);
  CHECK(w[0].find("1 entities") != std::string::npos);
}

TEST_CASE("malformed lines carry their line number") {
  TempDir dir;
  for (const auto& [content, line] : std::vector<std::pair<std::string, std::size_t>>{
           {"a\tr\tb\nb\tr\tc\nc\tr\n", 3},
           {"a\tr\tb\tx\n", 1},
           {"a r b\n", 1},
           {"a\tr\tb\n\na\t\tb\n", 3}}) {
    write_file(dir / "bad.txt", content);
    try {
      read_triples(dir / "bad.txt");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.code() == ErrorCode::kParseError);
      CHECK(e.line() == line);
      CHECK(std::string(e.what()).find(":" + std::to_string(line) + ":") != std::string::npos);
    }
  }
  write_dataset_files(dir, "a\tr\tb\n", "oops\n", "");
  CHECK(load_error(dir.path()) == ErrorCode::kParseError);
}

TEST_CASE("blank lines and CRLF endings are accepted") {
  TempDir dir;
  write_file(dir / "t.txt", "a\tr\tb\r\n\r\n\nb\tr\tc");
  const auto rows = read_triples(dir / "t.txt");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].tail == "b");
  CHECK(rows[1].head == "b");
  CHECK(rows[1].tail == "c");
}

TEST_CASE("missing files") {
  TempDir dir;
  CHECK(load_error(dir / "absent") == ErrorCode::kDatasetNotFound);
  write_file(dir / "train.txt", "a\tr\tb\n");
  write_file(dir / "test.txt", "");
  CHECK(load_error(dir.path()) == ErrorCode::kDatasetNotFound);
  write_file(dir / "valid.txt", "");
  CHECK_NOTHROW(load_dataset(dir.path()));
}

TEST_CASE("gzip-compressed splits") {
  TempDir dir;
  const std::string content = "a\tr\tb\nb\tr\tc\n";
  {
    gzFile gz = gzopen((dir / "train.txt.gz").c_str(), "wb");
    REQUIRE(gz != nullptr);
    gzwrite(gz, content.data(), static_cast<unsigned>(content.size()));
    gzclose(gz);
  }
  write_file(dir / "valid.txt", "");
  write_file(dir / "test.txt", "c\tr\ta\n");
  const auto store = load_dataset(dir.path());
  CHECK(store.raw_split(Split::kTrain).size() == 2);
  CHECK(store.num_entities() == 3);
}

TEST_CASE("write and read round trip") {
  TempDir dir;
  const std::vector<RawTriple> rows = {{"x", "rel", "y"}, {"y y", "r2", "z"}};
  write_triples(dir / "out.txt", rows);
  const auto back = read_triples(dir / "out.txt");
  REQUIRE(back.size() == 2);
  CHECK(back[1].head == "y y");
  CHECK(back[1].relation == "r2");
  CHECK(read_file(dir / "out.txt") == "x\trel\ty\ny y\tr2\tz\n");
}

TEST_CASE("relation names that collide with generated inverses") {
  const std::vector<RawTriple> train = {{"a", "r", "b"}, {"a", "r_reverse", "b"}};
  try {
    TripleStore::from_raw(train, {}, {});
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
}
