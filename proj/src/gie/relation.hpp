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

// Relations as rigid motions: a block-diagonal Givens rotation followed by a
// translation. In curved charts the rotation acts directly on ball points
// (orthogonal maps are ball isometries) and the translation enters through
// Mobius addition of its exponential image on the left, so the inverse motion
// cancels it exactly by left cancellation.

#include <string>

#include "gie/manifold.hpp"

namespace gie {

template <class T>
struct RelationParams {
  Vec<T> angles;       // d/2 Givens angles, radians
  Vec<T> translation;  // d, tangent coordinates at the origin
  Vec<T> attn_head;    // d, attention used for the head-side interaction
  Vec<T> attn_tail;    // d, attention used for the tail-side interaction

  std::size_t dim() const noexcept { return translation.size(); }
};

// Rotates each coordinate pair (x[2i], x[2i+1]) by angles[i].
template <class T>
Vec<T> rotate(const Vec<T>& angles, const Vec<T>& x) {
  if (x.size() % 2 != 0 || x.size() != 2 * angles.size()) {
    fail(ErrorCode::kDimensionMismatch,
         "rotate: " + std::to_string(angles.size()) + " angles for dimension " +
             std::to_string(x.size()));
  }
  using std::cos;
  using std::sin;
  Vec<T> out(x.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const T c = cos(angles[i]);
    const T s = sin(angles[i]);
    const T& a = x[2 * i];
    const T& b = x[2 * i + 1];
    out[2 * i] = c * a - s * b;
    out[2 * i + 1] = s * a + c * b;
  }
  return out;
}

// Applies the motion to a point already expressed in the chart of k.
template <class T>
Point<T> transform_point(const RelationParams<T>& rel, const Point<T>& p, const Curvature<T>& k) {
  detail::require_chart(p, k, "transform_point");
  Vec<T> rotated = rotate(rel.angles, p.coords);
  if (k.geometry == Geometry::kEuclidean) {
    return {vec::add(rotated, rel.translation), k.geometry};
  }
  const Point<T> shift = exp0(Tangent<T>{rel.translation}, k);
  return mobius_add(shift, Point<T>{std::move(rotated), k.geometry}, k);
}

// Maps an entity's tangent vector into the chart of k, then applies the motion.
template <class T>
Point<T> apply_relation(const RelationParams<T>& rel, const Vec<T>& x, const Curvature<T>& k) {
  if (x.size() != rel.dim()) {
    fail(ErrorCode::kDimensionMismatch, "apply_relation: entity dimension " +
                                            std::to_string(x.size()) + " vs relation dimension " +
                                            std::to_string(rel.dim()));
  }
  return transform_point(rel, exp0(Tangent<T>{x}, k), k);
}

// [R v; 0 1]^-1 = [R^T  -R^T v; 0 1]. Attention vectors are carried over.
template <class T>
RelationParams<T> inverse(const RelationParams<T>& rel) {
  RelationParams<T> out;
  out.angles = vec::neg(rel.angles);
  out.translation = vec::neg(rotate(out.angles, rel.translation));
  out.attn_head = rel.attn_head;
  out.attn_tail = rel.attn_tail;
  return out;
}

}  // namespace gie
