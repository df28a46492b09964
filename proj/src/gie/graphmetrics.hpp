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

// Structural diagnostics per relation: a sampled triangle-based curvature
// estimate (tree-like < 0, line-like ~ 0, cycle-like > 0) and the
// Krackhardt hierarchy score (share of directed edges without a reciprocal
// edge).

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gie/data.hpp"

namespace gie {

using NodeId = std::uint32_t;

class RelationGraph {
 public:
  // Nodes are 0..num_nodes-1; duplicate edges are ignored.
  static RelationGraph from_edges(std::size_t num_nodes,
                                  std::span<const std::pair<NodeId, NodeId>> edges);

  // Graph spanned by the edges of one relation. Entities touched by those
  // edges are renumbered 0..n-1 in increasing entity-id order.
  static RelationGraph from_triples(RelationId relation, std::span<const Triple> triples);

  RelationId relation() const noexcept { return relation_; }
  std::size_t num_nodes() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  // Directed edges, deduplicated and sorted.
  std::span<const std::pair<NodeId, NodeId>> edges() const noexcept { return edges_; }
  // Undirected neighbours, sorted.
  std::span<const NodeId> neighbours(NodeId v) const { return adjacency_[v]; }
  const std::vector<std::vector<NodeId>>& components() const noexcept { return components_; }
  std::size_t component_of(NodeId v) const { return component_of_[v]; }
  // Entity id of a node (identity for from_edges graphs).
  EntityId entity(NodeId v) const { return entity_.empty() ? v : entity_[v]; }

  // Hop distances from `source` in the undirected projection; unreachable
  // nodes get kUnreachable.
  std::vector<std::uint32_t> bfs(NodeId source) const;
  static constexpr std::uint32_t kUnreachable = UINT32_MAX;

 private:
  void build(std::size_t num_nodes, std::vector<std::pair<NodeId, NodeId>> edges);

  RelationId relation_ = 0;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::vector<NodeId>> components_;
  std::vector<std::size_t> component_of_;
  std::vector<EntityId> entity_;
};

// sum_ij R_ij (1 - R_ji) / sum_ij R_ij over the directed adjacency R.
// Throws EmptyGraph.
double khs(const RelationGraph& g);

// Curvature estimate of the triangle (a, b, c):
//   (d(a,m)^2 + d(b,c)^2 / 4 - (d(a,b)^2 + d(a,c)^2) / 2) / (2 d(a,m))
// where m is the node at position floor(d(b,c) / 2) on the lexicographically
// smallest shortest path from min(b, c) to max(b, c).
// Throws NotConnected, or Undefined when d(a, m) = 0.
double triangle_curvature(const RelationGraph& g, NodeId a, NodeId b, NodeId c);

struct CurvatureEstimate {
  double value = 0.0;
  // Sum of N_i^3 over the components that contributed; the weight of this
  // relation when averaging over a whole graph.
  double weight = 0.0;
  std::size_t triangles = 0;
};

// Samples ceil(samples * w_i) triangles (at least one) from every component
// with three or more nodes, w_i = N_i^3 / sum_j N_j^3, and returns the
// w-weighted mean of the per-component averages. Returns nullopt when no
// component qualifies. Reproducible for a fixed seed.
std::optional<CurvatureEstimate> curvature_estimate(const RelationGraph& g,
                                                    std::size_t samples = 1000,
                                                    std::uint64_t seed = 0,
                                                    std::size_t threads = 1);

struct RelationMetrics {
  RelationId relation = 0;
  std::string name;
  std::size_t edges = 0;
  double khs = std::numeric_limits<double>::quiet_NaN();  // NaN without training edges
  std::optional<double> curvature;
  double weight = 0.0;
};

struct GraphMetricsReport {
  std::vector<RelationMetrics> relations;
  // Curvature estimates averaged with weights sum_i N_{i,r}^3.
  std::optional<double> curvature;
};

// Metrics for every raw relation of the training split.
GraphMetricsReport graph_metrics(const TripleStore& store, std::size_t samples = 1000,
                                 std::uint64_t seed = 0, std::size_t threads = 1);

}  // namespace gie
