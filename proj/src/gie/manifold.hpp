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

// Gyrovector arithmetic on the Poincare ball and its spherical
// (stereographic) counterpart, parametrized by a curvature magnitude and a
// geometry tag. Every routine is a template over the scalar type so the same
// code runs on plain doubles and on recorded autodiff variables.
//
// Internally all formulas use a signed constant c: +k for the hyperbolic
// ball, -k for the sphere, 0 for flat space. With that substitution the
// Poincare-ball formulas cover all three geometries, tanh/atanh turning into
// tan/atan on the sphere.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "gie/autodiff.hpp"
#include "gie/error.hpp"

namespace gie {

enum class Geometry : std::uint8_t { kEuclidean = 0, kHyperbolic = 1, kSpherical = 2 };

std::string geometry_name(Geometry g);

template <class T>
using Vec = std::vector<T>;

inline constexpr double kBallMargin = 1e-5;
inline constexpr double kSphereAngleLimit = std::numbers::pi / 2.0 - 1e-6;
inline constexpr double kMinCurvature = 1e-4;
inline constexpr double kMaxCurvature = 1e4;
inline constexpr double kDegenerateDenominator = 1e-15;

template <class T>
struct Curvature {
  Geometry geometry = Geometry::kEuclidean;
  T magnitude = T(1.0);

  static Curvature hyperbolic(T k) { return {Geometry::kHyperbolic, k}; }
  static Curvature spherical(T k) { return {Geometry::kSpherical, k}; }
  static Curvature euclidean() { return {Geometry::kEuclidean, T(0.0)}; }
};

template <class T>
struct Point {
  Vec<T> coords;
  Geometry chart = Geometry::kEuclidean;
};

// Tangent vector at the origin unless a base point is passed explicitly.
template <class T>
struct Tangent {
  Vec<T> coords;
};

// Dense row-major matrix; only needed by the Mobius matrix product.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }

  static Matrix identity(std::size_t n) {
    Matrix m{n, n, std::vector<double>(n * n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

namespace vec {

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  T s(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T sq_norm(const Vec<T>& a) {
  return dot(a, a);
}

template <class T, class S>
Vec<T> scale(const S& s, const Vec<T>& a) {
  Vec<T> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

template <class T>
Vec<T> add(const Vec<T>& a, const Vec<T>& b) {
  Vec<T> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

template <class T>
Vec<T> sub(const Vec<T>& a, const Vec<T>& b) {
  Vec<T> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

template <class T>
Vec<T> neg(const Vec<T>& a) {
  Vec<T> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

}  // namespace vec

namespace detail {

inline void require_same_size(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    fail(ErrorCode::kDimensionMismatch, std::string(where) + ": dimension " +
                                            std::to_string(a) + " vs " + std::to_string(b));
  }
}

template <class T>
void require_chart(const Point<T>& x, const Curvature<T>& k, const char* where) {
  if (x.chart != k.geometry) {
    fail(ErrorCode::kChartMismatch, std::string(where) + ": point on " +
                                        geometry_name(x.chart) + " chart, curvature is " +
                                        geometry_name(k.geometry));
  }
}

template <class T>
void require_inside(const Vec<T>& x, const Curvature<T>& k, const char* where) {
  if (k.geometry != Geometry::kHyperbolic) return;
  const double q = value(k.magnitude) * value(vec::sq_norm(x));
  if (!(q < 1.0)) {
    fail(ErrorCode::kPointOutsideManifold,
         std::string(where) + ": point outside the ball (k*|x|^2 = " + std::to_string(q) + ")");
  }
}

// c in the Poincare-ball formulas: +k hyperbolic, -k spherical, 0 flat.
template <class T>
T signed_c(const Curvature<T>& k) {
  switch (k.geometry) {
    case Geometry::kHyperbolic: return k.magnitude;
    case Geometry::kSpherical: return -k.magnitude;
    case Geometry::kEuclidean: break;
  }
  return T(0.0);
}

// tan_c(sqrt(q)) / sqrt(q), with the spherical angle clamped below pi/2.
template <class T>
T tan_c_ratio(const T& q, Geometry g) {
  switch (g) {
    case Geometry::kHyperbolic: return tanh_ratio(q);
    case Geometry::kSpherical: {
      constexpr double kLimitSq = kSphereAngleLimit * kSphereAngleLimit;
      if (value(q) > kLimitSq) {
        using std::sqrt;
        return std::tan(kSphereAngleLimit) / sqrt(q);
      }
      return tan_ratio(q);
    }
    case Geometry::kEuclidean: break;
  }
  return T(1.0);
}

// arctan_c(sqrt(q)) / sqrt(q).
template <class T>
T arctan_c_ratio(const T& q, Geometry g) {
  switch (g) {
    case Geometry::kHyperbolic: return atanh_ratio(q);
    case Geometry::kSpherical: return atan_ratio(q);
    case Geometry::kEuclidean: break;
  }
  return T(1.0);
}

}  // namespace detail

// Radially pulls hyperbolic points back to sqrt(k)|x| <= 1 - kBallMargin.
template <class T>
Vec<T> project(Vec<T> x, const Curvature<T>& k) {
  if (k.geometry != Geometry::kHyperbolic) return x;
  using std::sqrt;
  const T radius = sqrt(k.magnitude * vec::sq_norm(x));
  if (value(radius) <= 1.0 - kBallMargin) return x;
  const T s = (1.0 - kBallMargin) / radius;
  for (auto& xi : x) xi = s * xi;
  return x;
}

template <class T>
T conformal_factor(const Point<T>& x, const Curvature<T>& k) {
  detail::require_chart(x, k, "conformal_factor");
  if (k.geometry == Geometry::kEuclidean) return T(2.0);
  detail::require_inside(x.coords, k, "conformal_factor");
  return 2.0 / (1.0 - detail::signed_c(k) * vec::sq_norm(x.coords));
}

template <class T>
Point<T> mobius_add(const Point<T>& x, const Point<T>& y, const Curvature<T>& k) {
  detail::require_chart(x, k, "mobius_add");
  detail::require_chart(y, k, "mobius_add");
  detail::require_same_size(x.coords.size(), y.coords.size(), "mobius_add");
  if (k.geometry == Geometry::kEuclidean) {
    return {vec::add(x.coords, y.coords), k.geometry};
  }
  const T c = detail::signed_c(k);
  const T xy = vec::dot(x.coords, y.coords);
  const T xx = vec::sq_norm(x.coords);
  const T yy = vec::sq_norm(y.coords);
  const T a = 1.0 + 2.0 * c * xy + c * yy;
  const T b = 1.0 - c * xx;
  const T den = 1.0 + 2.0 * c * xy + c * c * xx * yy;
  if (std::abs(value(den)) < kDegenerateDenominator) {
    fail(ErrorCode::kNumericalDegeneracy, "mobius_add: vanishing denominator");
  }
  Vec<T> out(x.coords.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a * x.coords[i] + b * y.coords[i]) / den;
  return {project(std::move(out), k), k.geometry};
}

template <class T>
Point<T> negate(const Point<T>& x) {
  return {vec::neg(x.coords), x.chart};
}

template <class T>
Point<T> mobius_sub(const Point<T>& x, const Point<T>& y, const Curvature<T>& k) {
  return mobius_add(x, negate(y), k);
}

// r (x) x; x = 0 maps to 0.
template <class T>
Point<T> mobius_scalar_mul(const T& r, const Point<T>& x, const Curvature<T>& k) {
  detail::require_chart(x, k, "mobius_scalar_mul");
  if (k.geometry == Geometry::kEuclidean) return {vec::scale(r, x.coords), k.geometry};
  const T q = k.magnitude * vec::sq_norm(x.coords);
  const T inv = detail::arctan_c_ratio(q, k.geometry);
  const T arg_sq = r * r * q * inv * inv;
  const T factor = detail::tan_c_ratio(arg_sq, k.geometry) * r * inv;
  return {project(vec::scale(factor, x.coords), k), k.geometry};
}

// M (x) x; a vanishing M x maps to 0.
template <class T>
Point<T> mobius_matvec(const Matrix& m, const Point<T>& x, const Curvature<T>& k) {
  detail::require_chart(x, k, "mobius_matvec");
  detail::require_same_size(m.cols, x.coords.size(), "mobius_matvec");
  Vec<T> mx(m.rows, T(0.0));
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) mx[r] += m(r, c) * x.coords[c];
  }
  if (k.geometry == Geometry::kEuclidean) return {std::move(mx), k.geometry};
  const T mx_sq = vec::sq_norm(mx);
  if (std::sqrt(value(mx_sq)) < kDegenerateDenominator) {
    return {Vec<T>(m.rows, T(0.0)), k.geometry};
  }
  const T inv = detail::arctan_c_ratio(k.magnitude * vec::sq_norm(x.coords), k.geometry);
  const T arg_sq = k.magnitude * mx_sq * inv * inv;
  const T factor = detail::tan_c_ratio(arg_sq, k.geometry) * inv;
  return {project(vec::scale(factor, mx), k), k.geometry};
}

template <class T>
Point<T> exp0(const Tangent<T>& v, const Curvature<T>& k) {
  if (k.geometry == Geometry::kEuclidean) return {v.coords, k.geometry};
  const T q = k.magnitude * vec::sq_norm(v.coords);
  const T factor = detail::tan_c_ratio(q, k.geometry);
  return {project(vec::scale(factor, v.coords), k), k.geometry};
}

template <class T>
Tangent<T> log0(const Point<T>& y, const Curvature<T>& k) {
  detail::require_chart(y, k, "log0");
  if (k.geometry == Geometry::kEuclidean) return {y.coords};
  detail::require_inside(y.coords, k, "log0");
  const T q = k.magnitude * vec::sq_norm(y.coords);
  return {vec::scale(detail::arctan_c_ratio(q, k.geometry), y.coords)};
}

// Exponential map at an arbitrary base point x.
template <class T>
Point<T> exp_map(const Point<T>& x, const Tangent<T>& v, const Curvature<T>& k) {
  detail::require_same_size(x.coords.size(), v.coords.size(), "exp_map");
  const T half_lambda = 0.5 * conformal_factor(x, k);
  const T q = k.magnitude * half_lambda * half_lambda * vec::sq_norm(v.coords);
  const T factor = detail::tan_c_ratio(q, k.geometry) * half_lambda;
  return mobius_add(x, Point<T>{project(vec::scale(factor, v.coords), k), k.geometry}, k);
}

// Logarithmic map at an arbitrary base point x.
template <class T>
Tangent<T> log_map(const Point<T>& x, const Point<T>& y, const Curvature<T>& k) {
  detail::require_inside(y.coords, k, "log_map");
  const T lambda = conformal_factor(x, k);
  const Point<T> w = mobius_add(negate(x), y, k);
  const T q = k.magnitude * vec::sq_norm(w.coords);
  const T factor = 2.0 / lambda * detail::arctan_c_ratio(q, k.geometry);
  return {vec::scale(factor, w.coords)};
}

// Geodesic distance; flat space returns 2|x - y|, the small-curvature limit.
template <class T>
T distance(const Point<T>& x, const Point<T>& y, const Curvature<T>& k) {
  detail::require_chart(x, k, "distance");
  detail::require_chart(y, k, "distance");
  detail::require_same_size(x.coords.size(), y.coords.size(), "distance");
  detail::require_inside(x.coords, k, "distance");
  detail::require_inside(y.coords, k, "distance");
  using std::sqrt;
  if (k.geometry == Geometry::kEuclidean) {
    return 2.0 * sqrt(vec::sq_norm(vec::sub(x.coords, y.coords)));
  }
  const Point<T> w = mobius_add(negate(x), y, k);
  const T w_sq = vec::sq_norm(w.coords);
  return 2.0 * sqrt(w_sq) * detail::arctan_c_ratio(k.magnitude * w_sq, k.geometry);
}

}  // namespace gie
