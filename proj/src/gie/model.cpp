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

#include "gie/model.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>
#include <unordered_map>

#include "gie/autodiff.hpp"

namespace gie {

std::string_view param_group_name(ParamGroup g) {
  switch (g) {
    case ParamGroup::kEntity: return "entity";
    case ParamGroup::kBiasHead: return "bias_head";
    case ParamGroup::kBiasTail: return "bias_tail";
    case ParamGroup::kAngles: return "angles";
    case ParamGroup::kTranslation: return "translation";
    case ParamGroup::kAttnHead: return "attn_head";
    case ParamGroup::kAttnTail: return "attn_tail";
    case ParamGroup::kCurvature: return "curvature";
  }
  return "unknown";
}

Parameters Parameters::zeros(const ModelDims& dims) {
  const std::size_t n = dims.num_entities;
  const std::size_t r = dims.num_relations;
  const std::size_t d = dims.dim;
  Parameters p;
  p.entity.assign(n * d, 0.0);
  p.bias_head.assign(n, 0.0);
  p.bias_tail.assign(n, 0.0);
  p.angles.assign(r * d / 2, 0.0);
  p.translation.assign(r * d, 0.0);
  p.attn_head.assign(r * d, 0.0);
  p.attn_tail.assign(r * d, 0.0);
  p.curvature.assign(3, 0.0);
  return p;
}

std::vector<double>& Parameters::group(ParamGroup g) {
  return const_cast<std::vector<double>&>(std::as_const(*this).group(g));
}

const std::vector<double>& Parameters::group(ParamGroup g) const {
  switch (g) {
    case ParamGroup::kEntity: return entity;
    case ParamGroup::kBiasHead: return bias_head;
    case ParamGroup::kBiasTail: return bias_tail;
    case ParamGroup::kAngles: return angles;
    case ParamGroup::kTranslation: return translation;
    case ParamGroup::kAttnHead: return attn_head;
    case ParamGroup::kAttnTail: return attn_tail;
    case ParamGroup::kCurvature: return curvature;
  }
  return curvature;
}

std::size_t Parameters::size() const {
  std::size_t total = 0;
  for (auto g : kAllParamGroups) total += group(g).size();
  return total;
}

void Parameters::fill(double v) {
  for (auto g : kAllParamGroups) std::fill(group(g).begin(), group(g).end(), v);
}

bool Parameters::all_finite() const {
  for (auto g : kAllParamGroups) {
    for (double x : group(g)) {
      if (!std::isfinite(x)) return false;
    }
  }
  return true;
}

namespace {

// Parameter access for plain evaluation.
class ValueSource {
 public:
  using Scalar = double;

  explicit ValueSource(const GieModel& model) : p_(model.params()), d_(model.dims().dim) {}

  Vec<double> entity(EntityId e) { return slice(p_.entity, e * d_, d_); }
  double bias_head(EntityId e) { return p_.bias_head[e]; }
  double bias_tail(EntityId e) { return p_.bias_tail[e]; }
  double curvature(std::size_t slot) { return p_.curvature[slot]; }

  RelationParams<double> relation(RelationId r) {
    return {slice(p_.angles, r * d_ / 2, d_ / 2), slice(p_.translation, r * d_, d_),
            slice(p_.attn_head, r * d_, d_), slice(p_.attn_tail, r * d_, d_)};
  }

 private:
  static Vec<double> slice(const std::vector<double>& v, std::size_t off, std::size_t n) {
    return {v.begin() + static_cast<std::ptrdiff_t>(off),
            v.begin() + static_cast<std::ptrdiff_t>(off + n)};
  }

  const Parameters& p_;
  std::size_t d_;
};

// Parameter access that records every parameter read as a tape leaf and
// remembers where its adjoint belongs.
class TapeSource {
 public:
  using Scalar = Var;

  TapeSource(const GieModel& model, ad::Tape& tape)
      : p_(model.params()), d_(model.dims().dim), tape_(tape) {}

  Vec<Var> entity(EntityId e) {
    auto it = entities_.find(e);
    if (it == entities_.end()) {
      it = entities_.emplace(e, leaves(ParamGroup::kEntity, e * d_, d_)).first;
    }
    return it->second;
  }
  Var bias_head(EntityId e) { return leaf(ParamGroup::kBiasHead, e); }
  Var bias_tail(EntityId e) { return leaf(ParamGroup::kBiasTail, e); }

  Var curvature(std::size_t slot) {
    if (curvature_[slot].is_constant()) curvature_[slot] = leaf(ParamGroup::kCurvature, slot);
    return curvature_[slot];
  }

  RelationParams<Var> relation(RelationId r) {
    auto it = relations_.find(r);
    if (it == relations_.end()) {
      RelationParams<Var> rel{leaves(ParamGroup::kAngles, r * d_ / 2, d_ / 2),
                              leaves(ParamGroup::kTranslation, r * d_, d_),
                              leaves(ParamGroup::kAttnHead, r * d_, d_),
                              leaves(ParamGroup::kAttnTail, r * d_, d_)};
      it = relations_.emplace(r, std::move(rel)).first;
    }
    return it->second;
  }

  template <class Emit>
  void scatter(const std::vector<double>& adjoint, Emit&& emit) const {
    for (const auto& [node, slot] : leaves_) {
      const double g = adjoint[static_cast<std::size_t>(node)];
      if (g != 0.0) emit(slot, g);
    }
  }

 private:
  Var leaf(ParamGroup g, std::size_t index) {
    const Var v = Var::leaf(tape_, p_.group(g)[index]);
    leaves_.push_back({v.id(), ParamSlot{g, static_cast<std::uint32_t>(index)}});
    return v;
  }

  Vec<Var> leaves(ParamGroup g, std::size_t off, std::size_t n) {
    Vec<Var> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = leaf(g, off + i);
    return out;
  }

  const Parameters& p_;
  std::size_t d_;
  ad::Tape& tape_;
  std::vector<std::pair<std::int32_t, ParamSlot>> leaves_;
  std::unordered_map<EntityId, Vec<Var>> entities_;
  std::unordered_map<RelationId, RelationParams<Var>> relations_;
  std::array<Var, 3> curvature_{};
};

template <class T>
struct HeadContext {
  Point<T> head_interaction;
  Point<T> head_chart;
  T head_bias;
  RelationParams<T> inverse_rel;
};

// Scoring over an arbitrary parameter source. The head side of a query is
// computed once and shared by every candidate tail.
template <class Source>
class ScoreKernel {
 public:
  using T = typename Source::Scalar;

  ScoreKernel(Source& src, Geometry interaction)
      : src_(src),
        k_hyper_(Curvature<T>::hyperbolic(src.curvature(kHyperCurvature))),
        k_sphere_(Curvature<T>::spherical(src.curvature(kSphereCurvature))),
        k_inter_{interaction, interaction == Geometry::kEuclidean
                                  ? T(0.0)
                                  : src.curvature(kInterCurvature)} {}

  HeadContext<T> head(EntityId h, RelationId r) {
    const RelationParams<T> rel = src_.relation(r);
    const Vec<T> x = src_.entity(h);
    return {interact(transformed(rel, x), rel.attn_head, k_inter_, k_hyper_, k_sphere_),
            exp0(Tangent<T>{x}, k_inter_), src_.bias_head(h), inverse(rel)};
  }

  T score(const HeadContext<T>& ctx, EntityId t) {
    const Vec<T> x = src_.entity(t);
    const Point<T> tail_chart = exp0(Tangent<T>{x}, k_inter_);
    const Point<T> tail_interaction = interact(transformed(ctx.inverse_rel, x),
                                               ctx.inverse_rel.attn_tail, k_inter_, k_hyper_,
                                               k_sphere_);
    return -(distance(ctx.head_interaction, tail_chart, k_inter_) +
             distance(tail_interaction, ctx.head_chart, k_inter_)) +
           ctx.head_bias + src_.bias_tail(t);
  }

 private:
  GeometryTriple<T> transformed(const RelationParams<T>& rel, const Vec<T>& x) {
    return {apply_relation(rel, x, Curvature<T>::euclidean()), apply_relation(rel, x, k_hyper_),
            apply_relation(rel, x, k_sphere_)};
  }

  Source& src_;
  Curvature<T> k_hyper_;
  Curvature<T> k_sphere_;
  Curvature<T> k_inter_;
};

// [begin, end) ranges of consecutive items sharing (head, relation).
std::vector<std::pair<std::size_t, std::size_t>> group_runs(std::span<const LabelledTriple> batch) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::size_t i = 0;
  while (i < batch.size()) {
    std::size_t j = i + 1;
    while (j < batch.size() && batch[j].triple.head == batch[i].triple.head &&
           batch[j].triple.relation == batch[i].triple.relation) {
      ++j;
    }
    runs.emplace_back(i, j);
    i = j;
  }
  return runs;
}

void check_ids(const ModelDims& dims, const Triple& t) {
  if (t.head >= dims.num_entities || t.tail >= dims.num_entities ||
      t.relation >= dims.num_relations) {
    fail(ErrorCode::kInvalidArgument, "triple id out of range");
  }
}

struct WorkerResult {
  double loss_sum = 0.0;
  std::vector<std::pair<ParamSlot, double>> contributions;
  std::exception_ptr error;
};

void run_groups(const GieModel& model, std::span<const LabelledTriple> batch,
                std::span<const std::pair<std::size_t, std::size_t>> runs, double weight,
                WorkerResult& out) {
  ad::Tape tape;
  for (const auto& [begin, end] : runs) {
    tape.clear();
    TapeSource src(model, tape);
    ScoreKernel<TapeSource> kernel(src, model.dims().interaction);
    const Triple& first = batch[begin].triple;
    const auto ctx = kernel.head(first.head, first.relation);
    Var group_loss(0.0);
    for (std::size_t i = begin; i < end; ++i) {
      const Var s = kernel.score(ctx, batch[i].triple.tail);
      group_loss += softplus(-static_cast<double>(batch[i].label) * s);
    }
    out.loss_sum += group_loss.value();
    if (group_loss.is_constant()) continue;
    const auto adjoint = tape.backward(group_loss.id(), weight);
    src.scatter(adjoint, [&](ParamSlot slot, double g) { out.contributions.emplace_back(slot, g); });
  }
}

}  // namespace

GieModel::GieModel(ModelDims dims, Parameters params)
    : dims_(std::move(dims)), params_(std::move(params)) {
  if (dims_.dim == 0 || dims_.dim % 2 != 0) {
    fail(ErrorCode::kInvalidConfig, "model dimension must be positive and even");
  }
  const auto expected = Parameters::zeros(dims_);
  for (auto g : kAllParamGroups) {
    if (params_.group(g).size() != expected.group(g).size()) {
      fail(ErrorCode::kDimensionMismatch,
           "parameter group " + std::string(param_group_name(g)) + " has wrong size");
    }
  }
}

double GieModel::score(EntityId head, RelationId relation, EntityId tail) const {
  check_ids(dims_, {head, relation, tail});
  ValueSource src(*this);
  ScoreKernel<ValueSource> kernel(src, dims_.interaction);
  return kernel.score(kernel.head(head, relation), tail);
}

void GieModel::score_tails(EntityId head, RelationId relation, std::span<double> out) const {
  check_ids(dims_, {head, relation, 0});
  detail::require_same_size(out.size(), dims_.num_entities, "score_tails");
  ValueSource src(*this);
  ScoreKernel<ValueSource> kernel(src, dims_.interaction);
  const auto ctx = kernel.head(head, relation);
  for (std::size_t e = 0; e < out.size(); ++e) out[e] = kernel.score(ctx, static_cast<EntityId>(e));
}

void GieModel::clamp_curvatures() {
  for (double& k : params_.curvature) k = std::clamp(k, kMinCurvature, kMaxCurvature);
}

GieModel init_model(const ModelDims& dims, std::uint64_t seed) {
  if (dims.dim == 0 || dims.dim % 2 != 0) {
    fail(ErrorCode::kInvalidConfig, "model dimension must be positive and even");
  }
  Parameters p = Parameters::zeros(dims);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> entity_dist(0.0, 0.01);
  std::uniform_real_distribution<double> angle_dist(-std::numbers::pi, std::numbers::pi);
  std::normal_distribution<double> attn_dist(0.0, 1.0 / std::sqrt(static_cast<double>(dims.dim)));
  for (double& x : p.entity) x = entity_dist(rng);
  for (double& x : p.angles) x = angle_dist(rng);
  for (double& x : p.attn_head) x = attn_dist(rng);
  for (double& x : p.attn_tail) x = attn_dist(rng);
  p.curvature = {1.0, 1.0, 1.0};
  return GieModel(dims, std::move(p));
}

double loss(const GieModel& model, std::span<const LabelledTriple> batch) {
  if (batch.empty()) fail(ErrorCode::kInvalidArgument, "loss: empty batch");
  ValueSource src(model);
  ScoreKernel<ValueSource> kernel(src, model.dims().interaction);
  double total = 0.0;
  for (const auto& [begin, end] : group_runs(batch)) {
    const Triple& first = batch[begin].triple;
    check_ids(model.dims(), first);
    const auto ctx = kernel.head(first.head, first.relation);
    for (std::size_t i = begin; i < end; ++i) {
      check_ids(model.dims(), batch[i].triple);
      total += softplus(-static_cast<double>(batch[i].label) * kernel.score(ctx, batch[i].triple.tail));
    }
  }
  return total / static_cast<double>(batch.size());
}

double loss_and_gradient(const GieModel& model, std::span<const LabelledTriple> batch,
                         Gradient& grad, std::size_t threads) {
  if (batch.empty()) fail(ErrorCode::kInvalidArgument, "loss: empty batch");
  for (const auto& item : batch) check_ids(model.dims(), item.triple);
  const auto runs = group_runs(batch);
  const double weight = 1.0 / static_cast<double>(batch.size());
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, runs.size());

  std::vector<WorkerResult> results(workers);
  const std::span<const std::pair<std::size_t, std::size_t>> all_runs(runs);
  auto chunk = [&](std::size_t w) {
    const std::size_t begin = runs.size() * w / workers;
    const std::size_t end = runs.size() * (w + 1) / workers;
    return all_runs.subspan(begin, end - begin);
  };
  if (workers == 1) {
    run_groups(model, batch, all_runs, weight, results[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          run_groups(model, batch, chunk(w), weight, results[w]);
        } catch (...) {
          results[w].error = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Merge in worker order so the result does not depend on scheduling.
  double total = 0.0;
  for (auto& r : results) {
    if (r.error) std::rethrow_exception(r.error);
    total += r.loss_sum;
    for (const auto& [slot, g] : r.contributions) {
      if (!std::isfinite(g)) {
        fail(ErrorCode::kGradientNonFinite,
             "non-finite gradient in " + std::string(param_group_name(slot.group)));
      }
      grad.group(slot.group)[slot.index] += g;
    }
  }
  return total * weight;
}

double score_and_gradient(const GieModel& model, const Triple& triple, Gradient& grad) {
  check_ids(model.dims(), triple);
  ad::Tape tape;
  TapeSource src(model, tape);
  ScoreKernel<TapeSource> kernel(src, model.dims().interaction);
  const Var s = kernel.score(kernel.head(triple.head, triple.relation), triple.tail);
  const auto adjoint = tape.backward(s.id());
  src.scatter(adjoint, [&](ParamSlot slot, double g) { grad.group(slot.group)[slot.index] += g; });
  return s.value();
}

std::vector<Triple> negative_sample(const Triple& positive, std::size_t k,
                                    std::size_t num_entities, std::mt19937_64& rng) {
  if (k == 0) fail(ErrorCode::kInvalidConfig, "negative_sample: k must be at least 1");
  if (num_entities == 0) fail(ErrorCode::kInvalidArgument, "negative_sample: no entities");
  std::uniform_int_distribution<EntityId> pick(0, static_cast<EntityId>(num_entities - 1));
  std::vector<Triple> out(k, positive);
  for (auto& t : out) {
    t.tail = pick(rng);
    for (int retry = 0; retry < 100 && t.tail == positive.tail && num_entities > 1; ++retry) {
      t.tail = pick(rng);
    }
  }
  return out;
}

}  // namespace gie
