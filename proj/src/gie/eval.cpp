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

#include "gie/eval.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

#include "gie/error.hpp"
#include "gie/model.hpp"

namespace gie {

Rank rank_tail(std::span<const double> scores, EntityId true_tail,
               std::span<const EntityId> known_tails) {
  const double target = scores[true_tail];
  std::size_t greater = 0, equal = 0, filtered_greater = 0, filtered_equal = 0;
  for (std::size_t e = 0; e < scores.size(); ++e) {
    if (e == true_tail) continue;
    const bool known = std::binary_search(known_tails.begin(), known_tails.end(),
                                          static_cast<EntityId>(e));
    if (scores[e] > target) {
      ++greater;
      if (!known) ++filtered_greater;
    } else if (scores[e] == target) {
      ++equal;
      if (!known) ++filtered_equal;
    }
  }
  return {1.0 + static_cast<double>(filtered_greater) + 0.5 * static_cast<double>(filtered_equal),
          1.0 + static_cast<double>(greater) + 0.5 * static_cast<double>(equal)};
}

EvalReport evaluate(const TailScorer& scorer, const TripleStore& store, Split split,
                    std::size_t threads) {
  const auto queries = store.split(split);
  std::vector<double> ranks(queries.size(), 0.0);
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(queries.size(), 1));

  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> scores(store.num_entities());
    for (std::size_t i = begin; i < end; ++i) {
      const Triple& q = queries[i];
      scorer(q.head, q.relation, scores);
      ranks[i] = rank_tail(scores, q.tail, store.true_tails(q.head, q.relation)).filtered;
    }
  };
  if (workers == 1) {
    work(0, queries.size());
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(queries.size() * w / workers, queries.size() * (w + 1) / workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  EvalReport report;
  report.queries = queries.size();
  report.hits = {{1, 0.0}, {3, 0.0}, {10, 0.0}};
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const double rank = ranks[i];
    report.mrr += 1.0 / rank;
    for (auto& [n, h] : report.hits) h += rank <= n ? 1.0 : 0.0;
    auto& rel = report.per_relation[store.raw_relation(queries[i].relation)];
    rel.mrr += 1.0 / rank;
    rel.hits10 += rank <= 10 ? 1.0 : 0.0;
    ++rel.count;
  }
  if (!queries.empty()) {
    const auto n = static_cast<double>(queries.size());
    report.mrr /= n;
    for (auto& [k, h] : report.hits) h /= n;
  }
  for (auto& [r, rel] : report.per_relation) {
    rel.mrr /= static_cast<double>(rel.count);
    rel.hits10 /= static_cast<double>(rel.count);
  }
  return report;
}

EvalReport evaluate(const GieModel& model, const TripleStore& store, Split split,
                    std::size_t threads) {
  if (model.dims().num_entities != store.num_entities() ||
      model.dims().num_relations != store.num_relations()) {
    fail(ErrorCode::kVocabMismatch,
         "model has " + std::to_string(model.dims().num_entities) + " entities / " +
             std::to_string(model.dims().num_relations) + " relations, dataset has " +
             std::to_string(store.num_entities()) + " / " + std::to_string(store.num_relations()));
  }
  return evaluate(
      [&model](EntityId h, RelationId r, std::span<double> out) { model.score_tails(h, r, out); },
      store, split, threads);
}

}  // namespace gie
