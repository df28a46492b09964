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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gie/manifold.hpp"
#include "support.hpp"

using namespace gie;
using namespace gie::test;

namespace {

using P = Point<double>;
using Tg = Tangent<double>;

// Poincare-ball distance in closed form, independent of gyrovector algebra.
double poincare_distance(const std::vector<double>& x, const std::vector<double>& y, double k) {
  const double num = 2.0 * k * vec::sq_norm(vec::sub(x, y));
  const double den = (1.0 - k * vec::sq_norm(x)) * (1.0 - k * vec::sq_norm(y));
  return std::acosh(1.0 + num / den) / std::sqrt(k);
}

// Great-circle distance after inverse stereographic projection onto the
// sphere of radius 1/sqrt(k).
double sphere_distance(const std::vector<double>& x, const std::vector<double>& y, double k) {
  auto lift = [k](const std::vector<double>& p) {
    const double q = k * vec::sq_norm(p);
    std::vector<double> out;
    for (double v : p) out.push_back(2.0 * std::sqrt(k) * v / (1.0 + q));
    out.push_back((1.0 - q) / (1.0 + q));
    return out;
  };
  const double c = std::clamp(vec::dot(lift(x), lift(y)), -1.0, 1.0);
  return std::acos(c) / std::sqrt(k);
}

Matrix random_rotation(std::mt19937_64& rng, std::size_t d) {
  // Gram-Schmidt on a Gaussian matrix.
  std::vector<std::vector<double>> cols;
  while (cols.size() < d) {
    auto v = random_vec(rng, d);
    for (const auto& c : cols) v = vec::sub(v, vec::scale(vec::dot(v, c), c));
    const double n = norm(v);
    cols.push_back(vec::scale(1.0 / n, v));
  }
  Matrix m{d, d, std::vector<double>(d * d)};
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) m(r, c) = cols[c][r];
  }
  return m;
}

std::vector<double> matmul(const Matrix& m, const std::vector<double>& x) {
  std::vector<double> out(m.rows, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) out[r] += m(r, c) * x[c];
  }
  return out;
}

}  // namespace

TEST_CASE("conformal factor") {
  CHECK(conformal_factor(P{{0.0, 0.0}, Geometry::kHyperbolic}, kHyper1) == 2.0);
  CHECK(conformal_factor(P{{0.0, 0.0}, Geometry::kSpherical}, kSphere1) == 2.0);
  CHECK(conformal_factor(P{{0.5, 0.0}, Geometry::kHyperbolic}, kHyper1) ==
        doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK(conformal_factor(P{{0.5, 0.0}, Geometry::kSpherical}, kSphere1) ==
        doctest::Approx(2.0 / 1.25).epsilon(1e-15));
  CHECK(conformal_factor(P{{7.0, -3.0}, Geometry::kEuclidean}, kFlat) == 2.0);
  CHECK_THROWS_AS(conformal_factor(P{{1.5, 0.0}, Geometry::kHyperbolic}, kHyper1), Error);
}

TEST_CASE("mobius addition follows the 1-D addition laws") {
  const P x{{0.3, 0.0}, Geometry::kHyperbolic};
  const P y{{0.4, 0.0}, Geometry::kHyperbolic};
  const auto z = mobius_add(x, y, kHyper1);
  CHECK(z.coords[0] == doctest::Approx(std::tanh(std::atanh(0.3) + std::atanh(0.4))).epsilon(1e-14));
  CHECK(z.coords[1] == 0.0);

  const P xs{{0.3, 0.0}, Geometry::kSpherical};
  const P ys{{0.4, 0.0}, Geometry::kSpherical};
  const auto zs = mobius_add(xs, ys, kSphere1);
  CHECK(zs.coords[0] == doctest::Approx(std::tan(std::atan(0.3) + std::atan(0.4))).epsilon(1e-14));

  // Curvature 4: tanh(2 t) composition on the rescaled ball.
  const auto k4 = Curvature<double>::hyperbolic(4.0);
  const auto z4 = mobius_add(P{{0.1, 0.0}, Geometry::kHyperbolic}, P{{0.2, 0.0}, Geometry::kHyperbolic}, k4);
  CHECK(z4.coords[0] ==
        doctest::Approx(std::tanh(std::atanh(0.2) + std::atanh(0.4)) / 2.0).epsilon(1e-14));
}

TEST_CASE("mobius identity, inverse and subtraction") {
  std::mt19937_64 rng(1);
  for (const auto& k : {kHyper1, kSphere1, Curvature<double>::hyperbolic(2.5)}) {
    for (int i = 0; i < 50; ++i) {
      const auto x = random_point(rng, 6, k);
      const P zero{std::vector<double>(6, 0.0), k.geometry};
      CHECK(max_abs_diff(mobius_add(x, zero, k).coords, x.coords) < 1e-12);
      CHECK(max_abs_diff(mobius_add(zero, x, k).coords, x.coords) < 1e-12);
      CHECK(norm(mobius_add(negate(x), x, k).coords) < 1e-10);
      CHECK(norm(mobius_sub(x, x, k).coords) < 1e-10);
      CHECK(max_abs_diff(mobius_sub(x, zero, k).coords, x.coords) < 1e-12);
    }
  }
}

TEST_CASE("mobius subtraction is not antisymmetric") {
  std::mt19937_64 rng(7);
  const auto x = random_point(rng, 4, kHyper1, 0.3, 0.6);
  const auto y = random_point(rng, 4, kHyper1, 0.3, 0.6);
  const auto a = mobius_sub(x, y, kHyper1);
  const auto b = negate(mobius_sub(y, x, kHyper1));
  CHECK(max_abs_diff(a.coords, b.coords) > 1e-3);
  // Norms agree: the difference is a gyration.
  CHECK(norm(a.coords) == doctest::Approx(norm(b.coords)).epsilon(1e-12));
}

TEST_CASE("mobius addition errors") {
  const P h{{0.1, 0.2}, Geometry::kHyperbolic};
  const P s{{0.1, 0.2}, Geometry::kSpherical};
  CHECK_THROWS_AS(mobius_add(h, s, kHyper1), Error);
  try {
    mobius_add(h, s, kHyper1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kChartMismatch);
  }
  try {
    mobius_add(h, P{{0.1, 0.2, 0.3}, Geometry::kHyperbolic}, kHyper1);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimensionMismatch);
  }
  // 1 + 2c<x,y> + c^2|x|^2|y|^2 = 1 - 2 + 1 on the unit sphere chart.
  try {
    mobius_add(P{{1.0, 0.0}, Geometry::kSpherical}, P{{1.0, 0.0}, Geometry::kSpherical}, kSphere1);
    FAIL("expected NumericalDegeneracy");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNumericalDegeneracy);
  }
}

TEST_CASE("results stay inside the ball") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_point(rng, 4, kHyper1, 0.9, 0.99999);
    const auto y = random_point(rng, 4, kHyper1, 0.9, 0.99999);
    const auto z = mobius_add(x, y, kHyper1);
    CHECK(norm(z.coords) <= 1.0 - kBallMargin + 1e-15);
    const auto big = exp0(Tg{random_with_norm(rng, 4, 5.0, 40.0)}, kHyper1);
    CHECK(norm(big.coords) <= 1.0 - kBallMargin + 1e-15);
  }
  const auto p = project(std::vector<double>{3.0, 4.0}, kHyper1);
  CHECK(norm(p) == doctest::Approx(1.0 - kBallMargin).epsilon(1e-15));
  CHECK(p[0] / p[1] == doctest::Approx(0.75));
}

TEST_CASE("mobius scalar multiplication") {
  std::mt19937_64 rng(4);
  for (const auto& k : {kHyper1, kSphere1}) {
    for (int i = 0; i < 50; ++i) {
      const auto x = random_point(rng, 4, k, 0.05, 0.8);
      CHECK(max_abs_diff(mobius_scalar_mul(1.0, x, k).coords, x.coords) < 1e-12);
      CHECK(norm(mobius_scalar_mul(0.0, x, k).coords) == 0.0);
      // Distances from the origin scale linearly.
      const double r = std::uniform_real_distribution<double>(-1.5, 1.5)(rng);
      const auto rx = mobius_scalar_mul(r, x, k);
      const P o{std::vector<double>(4, 0.0), k.geometry};
      if (k.geometry == Geometry::kSpherical && std::abs(r) * std::atan(norm(x.coords)) > 1.4) continue;
      CHECK(distance(o, rx, k) == doctest::Approx(std::abs(r) * distance(o, x, k)).epsilon(1e-10));
    }
  }
  const P x1{{0.5}, Geometry::kHyperbolic};
  CHECK(mobius_scalar_mul(3.0, x1, kHyper1).coords[0] ==
        doctest::Approx(std::tanh(3.0 * std::atanh(0.5))).epsilon(1e-14));
  const P zero{{0.0, 0.0}, Geometry::kHyperbolic};
  CHECK(norm(mobius_scalar_mul(2.0, zero, kHyper1).coords) == 0.0);
}

TEST_CASE("mobius matrix product") {
  std::mt19937_64 rng(5);
  for (const auto& k : {kHyper1, kSphere1}) {
    const auto x = random_point(rng, 5, k);
    CHECK(max_abs_diff(mobius_matvec(Matrix::identity(5), x, k).coords, x.coords) < 1e-12);
    for (int i = 0; i < 20; ++i) {
      const auto m = random_rotation(rng, 5);
      const auto y = random_point(rng, 5, k);
      CHECK(max_abs_diff(mobius_matvec(m, y, k).coords, matmul(m, y.coords)) < 1e-9);
    }
  }
  Matrix zero{2, 2, std::vector<double>(4, 0.0)};
  CHECK(norm(mobius_matvec(zero, P{{0.1, 0.2}, Geometry::kHyperbolic}, kHyper1).coords) == 0.0);
  // Scalar matrix r*I agrees with scalar multiplication.
  Matrix twice = Matrix::identity(3);
  for (auto& v : twice.data) v *= 2.0;
  const P x{{0.1, -0.2, 0.3}, Geometry::kHyperbolic};
  CHECK(max_abs_diff(mobius_matvec(twice, x, kHyper1).coords,
                     mobius_scalar_mul(2.0, x, kHyper1).coords) < 1e-12);
}

TEST_CASE("exponential and logarithmic maps at the origin") {
  CHECK(exp0(Tg{{1.0, 0.0}}, kHyper1).coords[0] == doctest::Approx(std::tanh(1.0)).epsilon(1e-15));
  CHECK(exp0(Tg{{1.0, 0.0}}, kSphere1).coords[0] == doctest::Approx(std::tan(1.0)).epsilon(1e-15));
  CHECK(exp0(Tg{{0.0, 0.0}}, kHyper1).coords == std::vector<double>{0.0, 0.0});
  CHECK(log0(P{{0.0, 0.0}, Geometry::kHyperbolic}, kHyper1).coords == std::vector<double>{0.0, 0.0});
  CHECK(log0(P{{std::tanh(1.0), 0.0}, Geometry::kHyperbolic}, kHyper1).coords[0] ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(exp0(Tg{{3.0, -4.0}}, kFlat).coords == std::vector<double>{3.0, -4.0});

  std::mt19937_64 rng(6);
  for (const auto& k : {kHyper1, kSphere1, Curvature<double>::hyperbolic(0.3)}) {
    for (int i = 0; i < 100; ++i) {
      const auto v = random_with_norm(rng, 6, 0.0, 2.0);
      // Stay clear of the tan clamp on the sphere.
      if (k.geometry == Geometry::kSpherical && norm(v) > 1.5) continue;
      CHECK(max_abs_diff(log0(exp0(Tg{v}, k), k).coords, v) < 1e-9);
    }
  }
  try {
    log0(P{{1.0, 0.0}, Geometry::kHyperbolic}, kHyper1);
    FAIL("expected PointOutsideManifold");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPointOutsideManifold);
  }
}

TEST_CASE("spherical exponential map clamps the angle") {
  const auto y = exp0(Tg{{10.0, 0.0}}, kSphere1);
  CHECK(std::isfinite(y.coords[0]));
  CHECK(y.coords[0] == doctest::Approx(std::tan(kSphereAngleLimit)));
}

TEST_CASE("exponential and logarithmic maps at a base point") {
  std::mt19937_64 rng(8);
  for (const auto& k : {kHyper1, kSphere1}) {
    const P zero{std::vector<double>(4, 0.0), k.geometry};
    const auto v = random_with_norm(rng, 4, 0.1, 1.0);
    CHECK(max_abs_diff(exp_map(zero, Tg{v}, k).coords, exp0(Tg{v}, k).coords) < 1e-14);
    const auto y = random_point(rng, 4, k, 0.1, 0.8);
    CHECK(max_abs_diff(log_map(zero, y, k).coords, log0(y, k).coords) < 1e-14);

    for (int i = 0; i < 100; ++i) {
      const auto x = random_point(rng, 4, k, 0.0, 0.5);
      const auto u = random_with_norm(rng, 4, 0.0, 1.0);
      CHECK(max_abs_diff(exp_map(x, Tg{std::vector<double>(4, 0.0)}, k).coords, x.coords) < 1e-15);
      const auto ex = exp_map(x, Tg{u}, k);
      CHECK(max_abs_diff(log_map(x, ex, k).coords, u) < 1e-7);
      // Unit-speed geodesics: d(x, exp_x(u)) equals the Riemannian norm of u.
      CHECK(distance(x, ex, k) ==
            doctest::Approx(conformal_factor(x, k) * norm(u)).epsilon(1e-9));
    }
  }
}

TEST_CASE("distance against closed forms") {
  std::mt19937_64 rng(9);
  CHECK(distance(P{{0.0, 0.0}, Geometry::kHyperbolic}, P{{0.5, 0.0}, Geometry::kHyperbolic}, kHyper1) ==
        doctest::Approx(2.0 * std::atanh(0.5)).epsilon(1e-14));
  CHECK(distance(P{{1.0, 2.0}, Geometry::kEuclidean}, P{{4.0, 6.0}, Geometry::kEuclidean}, kFlat) == 10.0);
  for (double kappa : {0.5, 1.0, 3.0}) {
    const auto kh = Curvature<double>::hyperbolic(kappa);
    const auto ks = Curvature<double>::spherical(kappa);
    for (int i = 0; i < 100; ++i) {
      const auto x = random_point(rng, 5, kh);
      const auto y = random_point(rng, 5, kh);
      CHECK(distance(x, y, kh) ==
            doctest::Approx(poincare_distance(x.coords, y.coords, kappa)).epsilon(1e-8));
      CHECK(distance(x, x, kh) < 1e-12);
      CHECK(std::abs(distance(x, y, kh) - distance(y, x, kh)) < 1e-9);

      const P xs{x.coords, Geometry::kSpherical};
      const P ys{y.coords, Geometry::kSpherical};
      CHECK(distance(xs, ys, ks) ==
            doctest::Approx(sphere_distance(xs.coords, ys.coords, kappa)).epsilon(1e-7));
    }
  }
}

TEST_CASE("operations approach flat space as the curvature vanishes") {
  std::mt19937_64 rng(10);
  for (auto g : {Geometry::kHyperbolic, Geometry::kSpherical}) {
    const Curvature<double> k{g, 1e-9};
    for (int i = 0; i < 50; ++i) {
      const auto xv = random_with_norm(rng, 4, 0.1, 3.0);
      const auto yv = random_with_norm(rng, 4, 0.1, 3.0);
      const P x{xv, g};
      const P y{yv, g};
      const double r = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
      CHECK(rel_diff(mobius_add(x, y, k).coords, vec::add(xv, yv)) < 1e-5);
      CHECK(rel_diff(mobius_scalar_mul(r, x, k).coords, vec::scale(r, xv)) < 1e-6);
      const auto m = random_rotation(rng, 4);
      CHECK(rel_diff(mobius_matvec(m, x, k).coords, matmul(m, xv)) < 1e-5);
      CHECK(rel_diff(exp0(Tg{xv}, k).coords, xv) < 1e-5);
      CHECK(rel_diff(log0(x, k).coords, xv) < 1e-5);
      CHECK(rel_diff(exp_map(x, Tg{yv}, k).coords, vec::add(xv, yv)) < 1e-5);
      CHECK(rel_diff(log_map(x, y, k).coords, vec::sub(yv, xv)) < 1e-5);
      CHECK(distance(x, y, k) == doctest::Approx(2.0 * norm(vec::sub(xv, yv))).epsilon(1e-5));
      CHECK(conformal_factor(x, k) == doctest::Approx(2.0).epsilon(1e-5));
    }
  }
}

TEST_CASE("distance gradients match finite differences") {
  std::mt19937_64 rng(11);
  const std::size_t d = 4;
  for (auto g : {Geometry::kHyperbolic, Geometry::kSpherical, Geometry::kEuclidean}) {
    for (int i = 0; i < 100; ++i) {
      const double kappa = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
      const Curvature<double> k{g, kappa};
      std::vector<double> params = random_point(rng, d, k, 1e-3, 0.9).coords;
      const auto y = random_point(rng, d, k, 1e-3, 0.9).coords;
      params.insert(params.end(), y.begin(), y.end());
      params.push_back(kappa);
      auto f = [&](const auto& p) {
        using T = std::decay_t<decltype(p[0])>;
        const Curvature<T> kk{g, g == Geometry::kEuclidean ? T(0.0) : p[2 * d]};
        const Point<T> a{{p.begin(), p.begin() + d}, g};
        const Point<T> b{{p.begin() + d, p.begin() + 2 * d}, g};
        return distance(a, b, kk);
      };
      const auto report = ad::grad_check(f, params, 1e-5, 1e-4);
      CHECK_MESSAGE(report.passed, "geometry " << geometry_name(g) << " err " << report.max_rel_error);
    }
  }
}
