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

#include "gie/autodiff.hpp"

namespace gie::ad {

std::vector<double> Tape::backward(std::int32_t seed, double seed_weight) const {
  std::vector<double> adj(nodes_.size(), 0.0);
  if (seed < 0) return adj;
  adj[static_cast<std::size_t>(seed)] = seed_weight;
  for (std::int32_t i = seed; i >= 0; --i) {
    const double a = adj[static_cast<std::size_t>(i)];
    if (a == 0.0) continue;
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    if (n.lhs >= 0) adj[static_cast<std::size_t>(n.lhs)] += a * n.dlhs;
    if (n.rhs >= 0) adj[static_cast<std::size_t>(n.rhs)] += a * n.drhs;
  }
  return adj;
}

namespace {

// Below this q the truncated Taylor series is exact to double precision and
// the closed forms would lose digits to cancellation.
constexpr double kSeriesCutoff = 1e-5;

}  // namespace

RatioEval tanh_ratio_eval(double q) {
  if (q < kSeriesCutoff) {
    return {1.0 - q / 3.0 + 2.0 * q * q / 15.0 - 17.0 * q * q * q / 315.0,
            -1.0 / 3.0 + 4.0 * q / 15.0 - 17.0 * q * q / 105.0};
  }
  const double s = std::sqrt(q);
  const double t = std::tanh(s);
  const double sech2 = 1.0 - t * t;
  return {t / s, (s * sech2 - t) / (2.0 * s * q)};
}

RatioEval atanh_ratio_eval(double q) {
  if (q < kSeriesCutoff) {
    return {1.0 + q / 3.0 + q * q / 5.0 + q * q * q / 7.0,
            1.0 / 3.0 + 2.0 * q / 5.0 + 3.0 * q * q / 7.0};
  }
  constexpr double kMaxQ = kAtanhLimit * kAtanhLimit;
  if (q > kMaxQ) {
    const double s = kAtanhLimit;
    return {std::atanh(s) / s, 0.0};
  }
  const double s = std::sqrt(q);
  const double a = std::atanh(s);
  return {a / s, (s / (1.0 - q) - a) / (2.0 * s * q)};
}

RatioEval tan_ratio_eval(double q) {
  if (q < kSeriesCutoff) {
    return {1.0 + q / 3.0 + 2.0 * q * q / 15.0 + 17.0 * q * q * q / 315.0,
            1.0 / 3.0 + 4.0 * q / 15.0 + 17.0 * q * q / 105.0};
  }
  const double s = std::sqrt(q);
  const double t = std::tan(s);
  return {t / s, (s * (1.0 + t * t) - t) / (2.0 * s * q)};
}

RatioEval atan_ratio_eval(double q) {
  if (q < kSeriesCutoff) {
    return {1.0 - q / 3.0 + q * q / 5.0 - q * q * q / 7.0,
            -1.0 / 3.0 + 2.0 * q / 5.0 - 3.0 * q * q / 7.0};
  }
  const double s = std::sqrt(q);
  const double a = std::atan(s);
  return {a / s, (s / (1.0 + q) - a) / (2.0 * s * q)};
}

}  // namespace gie::ad
