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

#include <functional>
#include <map>
#include <span>

#include "gie/data.hpp"

namespace gie {

class GieModel;

// Fills out[e] with the score of (head, relation, e) for every entity e.
// Called concurrently from several threads.
using TailScorer = std::function<void(EntityId head, RelationId relation, std::span<double> out)>;

struct RelationReport {
  double mrr = 0.0;
  double hits10 = 0.0;
  std::size_t count = 0;  // ranking queries (two per raw triple)
};

struct EvalReport {
  double mrr = 0.0;
  std::map<int, double> hits;  // n -> Hits@n for n in {1, 3, 10}
  std::size_t queries = 0;
  // Keyed by raw relation id; head and tail queries are pooled.
  std::map<RelationId, RelationReport> per_relation;
};

struct Rank {
  double filtered;
  double raw;
};

// Rank of the true tail among all candidates. Other true tails are skipped
// for the filtered rank; ties count half (mean of optimistic and
// pessimistic rank).
Rank rank_tail(std::span<const double> scores, EntityId true_tail,
               std::span<const EntityId> known_tails);

// Ranks the true tail of every augmented triple of `split`; the inverse
// triples supply head prediction.
EvalReport evaluate(const TailScorer& scorer, const TripleStore& store, Split split,
                    std::size_t threads = 1);

// Checks vocabulary sizes against the model, then evaluates it.
EvalReport evaluate(const GieModel& model, const TripleStore& store, Split split,
                    std::size_t threads = 1);

}  // namespace gie
