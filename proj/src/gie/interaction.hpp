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

#include <algorithm>
#include <array>

#include "gie/manifold.hpp"

namespace gie {

// One transformed entity seen from each of the three geometries.
template <class T>
struct GeometryTriple {
  Point<T> euclid;
  Point<T> hyper;
  Point<T> sphere;
};

template <class T>
struct AttentionWeights {
  T euclid;
  T hyper;
  T sphere;
};

// Tangent-space (origin) images of the three points, in a shared vector space.
template <class T>
std::array<Vec<T>, 3> tangent_images(const GeometryTriple<T>& triple, const Curvature<T>& k_hyper,
                                     const Curvature<T>& k_sphere) {
  if (triple.euclid.chart != Geometry::kEuclidean) {
    fail(ErrorCode::kChartMismatch, "interact: euclidean component is not on the flat chart");
  }
  return {triple.euclid.coords, log0(triple.hyper, k_hyper).coords,
          log0(triple.sphere, k_sphere).coords};
}

// Softmax over attn . t_i, shifted by the largest logit.
template <class T>
AttentionWeights<T> attention_weights(const std::array<Vec<T>, 3>& images, const Vec<T>& attn) {
  for (const auto& img : images) detail::require_same_size(attn.size(), img.size(), "interact");
  using std::exp;
  const std::array<T, 3> logits = {vec::dot(attn, images[0]), vec::dot(attn, images[1]),
                                   vec::dot(attn, images[2])};
  const double shift =
      std::max({value(logits[0]), value(logits[1]), value(logits[2])});
  const std::array<T, 3> e = {exp(logits[0] - shift), exp(logits[1] - shift),
                              exp(logits[2] - shift)};
  const T total = e[0] + e[1] + e[2];
  return {e[0] / total, e[1] / total, e[2] / total};
}

// Attention-weighted fusion of the three tangent images, mapped into the
// interaction space.
template <class T>
Point<T> interact(const GeometryTriple<T>& triple, const Vec<T>& attn, const Curvature<T>& k_inter,
                  const Curvature<T>& k_hyper, const Curvature<T>& k_sphere) {
  const auto images = tangent_images(triple, k_hyper, k_sphere);
  const auto w = attention_weights(images, attn);
  // sum_i w_i t_i written relative to t_E (the weights sum to one), so equal
  // images come back bit-exact.
  Vec<T> fused(attn.size());
  for (std::size_t i = 0; i < fused.size(); ++i) {
    fused[i] = images[0][i] + w.hyper * (images[1][i] - images[0][i]) +
               w.sphere * (images[2][i] - images[0][i]);
  }
  return exp0(Tangent<T>{std::move(fused)}, k_inter);
}

}  // namespace gie
