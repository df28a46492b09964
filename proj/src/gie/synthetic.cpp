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

#include "gie/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "gie/error.hpp"

namespace gie {
namespace {

constexpr int kFamilySize = 20;

std::string label(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%02d", prefix, i);
  return buf;
}

}  // namespace

SyntheticKg make_synthetic_kg(std::uint64_t seed, double test_fraction) {
  if (!(test_fraction >= 0.0 && test_fraction < 0.5)) {
    fail(ErrorCode::kInvalidConfig, "test fraction must be in [0, 0.5)");
  }
  // Each entry is a fact and its mirror.
  std::vector<std::pair<RawTriple, RawTriple>> pairs;
  for (int i = 0; i < kFamilySize; ++i) {
    const auto a = label("ring", i);
    const auto b = label("ring", (i + 1) % kFamilySize);
    pairs.push_back({{a, "adjacent_to", b}, {b, "adjacent_to", a}});
  }
  for (int i = 1; i < kFamilySize; ++i) {
    const auto child = label("node", i);
    const auto parent = label("node", (i - 1) / 2);
    pairs.push_back({{child, "subclass_of", parent}, {parent, "has_subclass", child}});
  }
  for (int i = 0; i + 1 < kFamilySize; ++i) {
    const auto a = label("step", i);
    const auto b = label("step", i + 1);
    pairs.push_back({{a, "next", b}, {b, "previous", a}});
  }

  const std::size_t total = 2 * pairs.size();
  const auto held_out = static_cast<std::size_t>(std::lround(test_fraction * static_cast<double>(total)));
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  // 0: keep both, 1: first held out, 2: second held out
  std::vector<int> fate(pairs.size(), 0);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < held_out; ++i) fate[order[i]] = coin(rng) ? 1 : 2;

  SyntheticKg kg;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [first, second] = pairs[i];
    (fate[i] == 1 ? kg.test : kg.train).push_back(first);
    (fate[i] == 2 ? kg.test : kg.train).push_back(second);
  }
  return kg;
}

void write_dataset(const std::filesystem::path& dir, const SyntheticKg& kg) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  write_triples(dir / "train.txt", kg.train);
  write_triples(dir / "valid.txt", kg.valid);
  write_triples(dir / "test.txt", kg.test);
}

}  // namespace gie
