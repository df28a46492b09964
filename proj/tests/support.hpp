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

// Small helpers shared by the unit tests: seeded random vectors and points,
// and vector comparisons.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gie/manifold.hpp"
#include "tempdir.hpp"

namespace gie::test {

inline std::vector<double> random_vec(std::mt19937_64& rng, std::size_t d, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  std::vector<double> v(d);
  for (auto& x : v) x = n(rng);
  return v;
}

// Uniform direction, norm uniform in [lo, hi].
inline std::vector<double> random_with_norm(std::mt19937_64& rng, std::size_t d, double lo,
                                            double hi) {
  auto v = random_vec(rng, d);
  const double n = std::sqrt(vec::sq_norm(v));
  const double r = std::uniform_real_distribution<double>(lo, hi)(rng);
  for (auto& x : v) x *= r / n;
  return v;
}

// A point whose scaled radius sqrt(k)|x| lies in [lo, hi].
inline Point<double> random_point(std::mt19937_64& rng, std::size_t d, const Curvature<double>& k,
                                  double lo = 1e-3, double hi = 0.9) {
  const double s = k.geometry == Geometry::kEuclidean ? 1.0 : 1.0 / std::sqrt(k.magnitude);
  return {random_with_norm(rng, d, lo * s, hi * s), k.geometry};
}

inline double norm(const std::vector<double>& v) { return std::sqrt(vec::sq_norm(v)); }

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// |a - b| / max(|b|, floor), vector norms.
inline double rel_diff(const std::vector<double>& a, const std::vector<double>& b,
                       double floor = 1e-12) {
  return norm(vec::sub(a, b)) / std::max(norm(b), floor);
}

inline const Curvature<double> kHyper1 = Curvature<double>::hyperbolic(1.0);
inline const Curvature<double> kSphere1 = Curvature<double>::spherical(1.0);
inline const Curvature<double> kFlat = Curvature<double>::euclidean();

}  // namespace gie::test
