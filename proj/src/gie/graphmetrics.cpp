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

#include "gie/graphmetrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <exception>
#include <random>
#include <thread>

#include "gie/error.hpp"

namespace gie {

RelationGraph RelationGraph::from_edges(std::size_t num_nodes,
                                        std::span<const std::pair<NodeId, NodeId>> edges) {
  for (const auto& [u, v] : edges) {
    if (u >= num_nodes || v >= num_nodes) {
      fail(ErrorCode::kInvalidArgument, "edge endpoint out of range");
    }
  }
  RelationGraph g;
  g.build(num_nodes, {edges.begin(), edges.end()});
  return g;
}

RelationGraph RelationGraph::from_triples(RelationId relation, std::span<const Triple> triples) {
  RelationGraph g;
  g.relation_ = relation;
  for (const auto& t : triples) {
    if (t.relation != relation) continue;
    g.entity_.push_back(t.head);
    g.entity_.push_back(t.tail);
  }
  std::sort(g.entity_.begin(), g.entity_.end());
  g.entity_.erase(std::unique(g.entity_.begin(), g.entity_.end()), g.entity_.end());
  auto local = [&](EntityId e) {
    return static_cast<NodeId>(std::lower_bound(g.entity_.begin(), g.entity_.end(), e) -
                               g.entity_.begin());
  };
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& t : triples) {
    if (t.relation == relation) edges.emplace_back(local(t.head), local(t.tail));
  }
  g.build(g.entity_.size(), std::move(edges));
  return g;
}

void RelationGraph::build(std::size_t num_nodes, std::vector<std::pair<NodeId, NodeId>> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  adjacency_.assign(num_nodes, {});
  for (const auto& [u, v] : edges_) {
    if (u == v) continue;
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nb : adjacency_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  component_of_.assign(num_nodes, SIZE_MAX);
  components_.clear();
  for (NodeId s = 0; s < num_nodes; ++s) {
    if (component_of_[s] != SIZE_MAX) continue;
    const std::size_t id = components_.size();
    components_.emplace_back();
    auto& members = components_.back();
    std::deque<NodeId> queue{s};
    component_of_[s] = id;
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop_front();
      members.push_back(v);
      for (NodeId w : adjacency_[v]) {
        if (component_of_[w] == SIZE_MAX) {
          component_of_[w] = id;
          queue.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
  }
}

std::vector<std::uint32_t> RelationGraph::bfs(NodeId source) const {
  std::vector<std::uint32_t> dist(num_nodes(), kUnreachable);
  std::vector<NodeId> frontier{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const NodeId v = frontier[head];
    for (NodeId w : adjacency_[v]) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        frontier.push_back(w);
      }
    }
  }
  return dist;
}

double khs(const RelationGraph& g) {
  const auto edges = g.edges();
  if (edges.empty()) fail(ErrorCode::kEmptyGraph, "relation graph has no edges");
  std::size_t unreciprocated = 0;
  for (const auto& [u, v] : edges) {
    const bool reverse = std::binary_search(edges.begin(), edges.end(), std::make_pair(v, u));
    if (!reverse) ++unreciprocated;
  }
  return static_cast<double>(unreciprocated) / static_cast<double>(edges.size());
}

namespace {

struct TriangleResult {
  enum class Status { kOk, kNotConnected, kDegenerate } status;
  double value;
};

TriangleResult triangle(const RelationGraph& g, NodeId a, NodeId b, NodeId c) {
  const NodeId lo = std::min(b, c);
  const NodeId hi = std::max(b, c);
  const auto from_hi = g.bfs(hi);
  if (from_hi[lo] == RelationGraph::kUnreachable) return {TriangleResult::Status::kNotConnected, 0};
  const std::uint32_t bc = from_hi[lo];

  // Walk from lo towards hi, always stepping to the smallest neighbour that
  // is one hop closer: the lexicographically smallest shortest path.
  NodeId m = lo;
  for (std::uint32_t step = 0; step < bc / 2; ++step) {
    for (NodeId w : g.neighbours(m)) {
      if (from_hi[w] + 1 == from_hi[m]) {
        m = w;
        break;
      }
    }
  }

  const auto from_a = g.bfs(a);
  if (from_a[b] == RelationGraph::kUnreachable || from_a[c] == RelationGraph::kUnreachable) {
    return {TriangleResult::Status::kNotConnected, 0};
  }
  const double am = from_a[m];
  if (am == 0.0) return {TriangleResult::Status::kDegenerate, 0};
  const double ab = from_a[b];
  const double ac = from_a[c];
  const double bcd = bc;
  return {TriangleResult::Status::kOk,
          (am * am + bcd * bcd / 4.0 - (ab * ab + ac * ac) / 2.0) / (2.0 * am)};
}

}  // namespace

double triangle_curvature(const RelationGraph& g, NodeId a, NodeId b, NodeId c) {
  const auto n = g.num_nodes();
  if (a >= n || b >= n || c >= n) fail(ErrorCode::kInvalidArgument, "node out of range");
  if (a == b || a == c || b == c) fail(ErrorCode::kInvalidArgument, "triangle nodes must be distinct");
  const auto r = triangle(g, a, b, c);
  switch (r.status) {
    case TriangleResult::Status::kNotConnected:
      fail(ErrorCode::kNotConnected, "triangle vertices are not mutually reachable");
    case TriangleResult::Status::kDegenerate:
      fail(ErrorCode::kUndefined, "degenerate triangle: a is the midpoint of the b-c path");
    case TriangleResult::Status::kOk: break;
  }
  return r.value;
}

std::optional<CurvatureEstimate> curvature_estimate(const RelationGraph& g, std::size_t samples,
                                                    std::uint64_t seed, std::size_t threads) {
  if (samples == 0) fail(ErrorCode::kInvalidConfig, "samples must be positive");
  std::vector<std::size_t> eligible;
  double cube_total = 0.0;
  for (std::size_t i = 0; i < g.components().size(); ++i) {
    const auto size = static_cast<double>(g.components()[i].size());
    if (size >= 3) {
      eligible.push_back(i);
      cube_total += size * size * size;
    }
  }
  if (eligible.empty()) return std::nullopt;

  struct ComponentResult {
    double mean = 0.0;
    std::size_t accepted = 0;
  };
  std::vector<ComponentResult> results(eligible.size());

  auto sample_component = [&](std::size_t slot) {
    const auto& members = g.components()[eligible[slot]];
    const auto size = static_cast<double>(members.size());
    const double w = size * size * size / cube_total;
    const auto budget = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(static_cast<double>(samples) * w - 1e-9)));
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(g.relation()),
                      static_cast<std::uint32_t>(eligible[slot])};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
    double sum = 0.0;
    std::size_t accepted = 0;
    const std::size_t max_attempts = 50 * budget;
    for (std::size_t attempt = 0; attempt < max_attempts && accepted < budget; ++attempt) {
      const NodeId a = members[pick(rng)];
      const NodeId b = members[pick(rng)];
      const NodeId c = members[pick(rng)];
      if (a == b || a == c || b == c) continue;
      const auto r = triangle(g, a, b, c);
      if (r.status != TriangleResult::Status::kOk) continue;
      sum += r.value;
      ++accepted;
    }
    results[slot] = {accepted > 0 ? sum / static_cast<double>(accepted) : 0.0, accepted};
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, eligible.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < eligible.size(); ++i) sample_component(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < eligible.size(); i = next++) sample_component(i);
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

  CurvatureEstimate est;
  double weighted = 0.0;
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    if (results[i].accepted == 0) continue;
    const auto size = static_cast<double>(g.components()[eligible[i]].size());
    const double cube = size * size * size;
    weighted += cube * results[i].mean;
    est.weight += cube;
    est.triangles += results[i].accepted;
  }
  if (est.triangles == 0) return std::nullopt;
  est.value = weighted / est.weight;
  return est;
}

GraphMetricsReport graph_metrics(const TripleStore& store, std::size_t samples,
                                 std::uint64_t seed, std::size_t threads) {
  GraphMetricsReport report;
  const auto train = store.raw_split(Split::kTrain);
  double weighted = 0.0;
  double weight = 0.0;
  for (RelationId r = 0; r < store.num_raw_relations(); ++r) {
    const auto g = RelationGraph::from_triples(r, train);
    RelationMetrics row;
    row.relation = r;
    row.name = store.relations().name(r);
    row.edges = g.num_edges();
    if (row.edges == 0) {
      // Relation only occurs outside the training split.
      report.relations.push_back(std::move(row));
      continue;
    }
    row.khs = khs(g);
    if (auto est = curvature_estimate(g, samples, seed, threads)) {
      row.curvature = est->value;
      row.weight = est->weight;
      weighted += est->weight * est->value;
      weight += est->weight;
    }
    report.relations.push_back(std::move(row));
  }
  if (weight > 0.0) report.curvature = weighted / weight;
  return report;
}

}  // namespace gie
