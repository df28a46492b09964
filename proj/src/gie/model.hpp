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

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gie/data.hpp"
#include "gie/interaction.hpp"
#include "gie/relation.hpp"

namespace gie {

enum class ParamGroup : std::uint8_t {
  kEntity = 0,
  kBiasHead,
  kBiasTail,
  kAngles,
  kTranslation,
  kAttnHead,
  kAttnTail,
  kCurvature,
};

inline constexpr std::array<ParamGroup, 8> kAllParamGroups = {
    ParamGroup::kEntity,      ParamGroup::kBiasHead, ParamGroup::kBiasTail,
    ParamGroup::kAngles,      ParamGroup::kTranslation, ParamGroup::kAttnHead,
    ParamGroup::kAttnTail,    ParamGroup::kCurvature};

std::string_view param_group_name(ParamGroup g);

// Index into Parameters::curvature.
enum CurvatureSlot : std::size_t { kHyperCurvature = 0, kSphereCurvature = 1, kInterCurvature = 2 };

struct ModelDims {
  std::size_t num_entities = 0;
  std::size_t num_relations = 0;  // augmented count
  std::size_t dim = 0;
  Geometry interaction = Geometry::kHyperbolic;

  friend bool operator==(const ModelDims&, const ModelDims&) = default;
};

// Flat storage of every trainable scalar. Also used, zero-filled, as the
// gradient accumulator.
struct Parameters {
  std::vector<double> entity;       // N x d
  std::vector<double> bias_head;    // N
  std::vector<double> bias_tail;    // N
  std::vector<double> angles;       // R x d/2
  std::vector<double> translation;  // R x d
  std::vector<double> attn_head;    // R x d
  std::vector<double> attn_tail;    // R x d
  std::vector<double> curvature;    // {hyperbolic, spherical, interaction}

  static Parameters zeros(const ModelDims& dims);

  std::vector<double>& group(ParamGroup g);
  const std::vector<double>& group(ParamGroup g) const;
  std::size_t size() const;
  void fill(double v);
  bool all_finite() const;

  friend bool operator==(const Parameters&, const Parameters&) = default;
};

using Gradient = Parameters;

struct ParamSlot {
  ParamGroup group;
  std::uint32_t index;
};

struct LabelledTriple {
  Triple triple;
  int label = 1;  // +1 observed, -1 negative
};

class GieModel {
 public:
  GieModel() = default;
  GieModel(ModelDims dims, Parameters params);

  const ModelDims& dims() const noexcept { return dims_; }
  const Parameters& params() const noexcept { return params_; }
  Parameters& params() noexcept { return params_; }

  double score(EntityId head, RelationId relation, EntityId tail) const;

  // Scores (head, relation, e) for every entity e; out.size() == N.
  void score_tails(EntityId head, RelationId relation, std::span<double> out) const;

  // Re-clamps curvature magnitudes into [kMinCurvature, kMaxCurvature].
  void clamp_curvatures();

 private:
  ModelDims dims_;
  Parameters params_;
};

// Entities ~ N(0, 0.01^2), angles ~ U(-pi, pi), translations 0, attention
// ~ N(0, 1/sqrt(d)), biases 0, curvatures 1.
GieModel init_model(const ModelDims& dims, std::uint64_t seed);

// Mean over the batch of log(1 + exp(-y * score)).
double loss(const GieModel& model, std::span<const LabelledTriple> batch);

// Same value as loss(); adds d loss / d theta into `grad` (which must be
// shaped like the model). Consecutive items sharing (head, relation) reuse
// the head-side computation. Work is split over `threads` private tapes.
double loss_and_gradient(const GieModel& model, std::span<const LabelledTriple> batch,
                         Gradient& grad, std::size_t threads = 1);

// Gradient of a single score with respect to every parameter it touches.
double score_and_gradient(const GieModel& model, const Triple& triple, Gradient& grad);

// k copies of `positive` with uniformly drawn tails; a draw equal to the
// true tail is redrawn up to 100 times before being accepted.
std::vector<Triple> negative_sample(const Triple& positive, std::size_t k,
                                    std::size_t num_entities, std::mt19937_64& rng);

}  // namespace gie
