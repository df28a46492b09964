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

// Reverse-mode differentiation over a scalar tape.
//
// Model code is written once as templates over a scalar type T and
// instantiated with either `double` (plain evaluation) or `Var` (recorded
// evaluation). A Var without a tape is a constant; operations between
// constants never touch a tape, so untouched parameters cost nothing.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace gie::ad {

class Tape {
 public:
  struct Node {
    std::int32_t lhs;
    std::int32_t rhs;
    double dlhs;
    double drhs;
  };

  std::int32_t leaf() { return push(-1, 0.0, -1, 0.0); }

  std::int32_t push(std::int32_t lhs, double dlhs, std::int32_t rhs, double drhs) {
    nodes_.push_back({lhs, rhs, dlhs, drhs});
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  void clear() noexcept { nodes_.clear(); }
  void reserve(std::size_t n) { nodes_.reserve(n); }

  // Adjoints of every node with respect to `seed`, scaled by `seed_weight`.
  // Nodes are stored in creation order, so a single reverse sweep suffices.
  std::vector<double> backward(std::int32_t seed, double seed_weight = 1.0) const;

 private:
  std::vector<Node> nodes_;
};

class Var {
 public:
  Var() = default;
  Var(double value) : value_(value) {}  // NOLINT: constants convert implicitly
  Var(double value, Tape* tape, std::int32_t id) : value_(value), id_(id), tape_(tape) {}

  static Var leaf(Tape& tape, double value) { return Var(value, &tape, tape.leaf()); }

  double value() const noexcept { return value_; }
  std::int32_t id() const noexcept { return id_; }
  Tape* tape() const noexcept { return tape_; }
  bool is_constant() const noexcept { return tape_ == nullptr; }

  Var& operator+=(const Var& o);
  Var& operator-=(const Var& o);
  Var& operator*=(const Var& o);
  Var& operator/=(const Var& o);

 private:
  double value_ = 0.0;
  std::int32_t id_ = -1;
  Tape* tape_ = nullptr;
};

inline double value(double x) noexcept { return x; }
inline double value(const Var& x) noexcept { return x.value(); }

// Records y = f(x) with dy/dx = dydx.
inline Var unary(const Var& x, double y, double dydx) {
  if (x.is_constant()) return Var(y);
  return Var(y, x.tape(), x.tape()->push(x.id(), dydx, -1, 0.0));
}

// Records y = f(a, b) with partials da, db.
inline Var binary(const Var& a, const Var& b, double y, double da, double db) {
  if (a.is_constant() && b.is_constant()) return Var(y);
  if (a.is_constant()) return Var(y, b.tape(), b.tape()->push(b.id(), db, -1, 0.0));
  if (b.is_constant()) return Var(y, a.tape(), a.tape()->push(a.id(), da, -1, 0.0));
  return Var(y, a.tape(), a.tape()->push(a.id(), da, b.id(), db));
}

inline Var operator+(const Var& a, const Var& b) {
  return binary(a, b, a.value() + b.value(), 1.0, 1.0);
}
inline Var operator-(const Var& a, const Var& b) {
  return binary(a, b, a.value() - b.value(), 1.0, -1.0);
}
inline Var operator*(const Var& a, const Var& b) {
  return binary(a, b, a.value() * b.value(), b.value(), a.value());
}
inline Var operator/(const Var& a, const Var& b) {
  const double inv = 1.0 / b.value();
  const double y = a.value() * inv;
  return binary(a, b, y, inv, -y * inv);
}
inline Var operator-(const Var& a) { return unary(a, -a.value(), -1.0); }

inline Var operator+(const Var& a, double b) { return unary(a, a.value() + b, 1.0); }
inline Var operator+(double a, const Var& b) { return unary(b, a + b.value(), 1.0); }
inline Var operator-(const Var& a, double b) { return unary(a, a.value() - b, 1.0); }
inline Var operator-(double a, const Var& b) { return unary(b, a - b.value(), -1.0); }
inline Var operator*(const Var& a, double b) { return unary(a, a.value() * b, b); }
inline Var operator*(double a, const Var& b) { return unary(b, a * b.value(), a); }
inline Var operator/(const Var& a, double b) { return unary(a, a.value() / b, 1.0 / b); }
inline Var operator/(double a, const Var& b) {
  const double y = a / b.value();
  return unary(b, y, -y / b.value());
}

inline Var& Var::operator+=(const Var& o) { return *this = *this + o; }
inline Var& Var::operator-=(const Var& o) { return *this = *this - o; }
inline Var& Var::operator*=(const Var& o) { return *this = *this * o; }
inline Var& Var::operator/=(const Var& o) { return *this = *this / o; }

// Square root with a zero derivative at 0 (subgradient of a norm).
inline Var sqrt(const Var& x) {
  const double y = std::sqrt(x.value());
  return unary(x, y, y > 0.0 ? 0.5 / y : 0.0);
}
inline Var exp(const Var& x) {
  const double y = std::exp(x.value());
  return unary(x, y, y);
}
inline Var log(const Var& x) { return unary(x, std::log(x.value()), 1.0 / x.value()); }
inline Var log1p(const Var& x) {
  return unary(x, std::log1p(x.value()), 1.0 / (1.0 + x.value()));
}
inline Var sin(const Var& x) { return unary(x, std::sin(x.value()), std::cos(x.value())); }
inline Var cos(const Var& x) { return unary(x, std::cos(x.value()), -std::sin(x.value())); }
inline Var tanh(const Var& x) {
  const double y = std::tanh(x.value());
  return unary(x, y, 1.0 - y * y);
}
inline Var tan(const Var& x) {
  const double y = std::tan(x.value());
  return unary(x, y, 1.0 + y * y);
}
inline Var atan(const Var& x) {
  return unary(x, std::atan(x.value()), 1.0 / (1.0 + x.value() * x.value()));
}

inline constexpr double kAtanhLimit = 1.0 - 1e-12;

inline double atanh(double x) {
  return std::atanh(std::clamp(x, -kAtanhLimit, kAtanhLimit));
}
inline Var atanh(const Var& x) {
  const double t = std::clamp(x.value(), -kAtanhLimit, kAtanhLimit);
  return unary(x, std::atanh(t), 1.0 / (1.0 - t * t));
}

// log(1 + exp(z)) without overflow.
inline double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}
inline Var softplus(const Var& z) {
  const double s = 1.0 / (1.0 + std::exp(-z.value()));
  return unary(z, softplus(z.value()), s);
}

// Clamps from above; the derivative vanishes where the clamp is active.
inline double clamp_max(double x, double hi) { return x > hi ? hi : x; }
inline Var clamp_max(const Var& x, double hi) {
  return x.value() > hi ? Var(hi) : x;
}

// Smooth ratios of the form f(sqrt(q)) / sqrt(q) for q >= 0. They are the
// building blocks of every curvature-dependent map and stay differentiable
// at q = 0, where the naive expressions divide zero by zero.
struct RatioEval {
  double value;
  double derivative;
};

RatioEval tanh_ratio_eval(double q);
RatioEval atanh_ratio_eval(double q);
RatioEval tan_ratio_eval(double q);
RatioEval atan_ratio_eval(double q);

inline double tanh_ratio(double q) { return tanh_ratio_eval(q).value; }
inline double atanh_ratio(double q) { return atanh_ratio_eval(q).value; }
inline double tan_ratio(double q) { return tan_ratio_eval(q).value; }
inline double atan_ratio(double q) { return atan_ratio_eval(q).value; }

inline Var tanh_ratio(const Var& q) {
  const auto r = tanh_ratio_eval(q.value());
  return unary(q, r.value, r.derivative);
}
inline Var atanh_ratio(const Var& q) {
  const auto r = atanh_ratio_eval(q.value());
  return unary(q, r.value, r.derivative);
}
inline Var tan_ratio(const Var& q) {
  const auto r = tan_ratio_eval(q.value());
  return unary(q, r.value, r.derivative);
}
inline Var atan_ratio(const Var& q) {
  const auto r = atan_ratio_eval(q.value());
  return unary(q, r.value, r.derivative);
}

// Gradient of f at x through one recorded evaluation.
template <class F>
std::vector<double> gradient(F&& f, std::span<const double> x, double* out_value = nullptr) {
  Tape tape;
  std::vector<Var> vars;
  vars.reserve(x.size());
  for (double xi : x) vars.push_back(Var::leaf(tape, xi));
  const Var y = f(vars);
  if (out_value != nullptr) *out_value = y.value();
  std::vector<double> g(x.size(), 0.0);
  if (y.is_constant()) return g;
  const auto adj = tape.backward(y.id());
  for (std::size_t i = 0; i < vars.size(); ++i) g[i] = adj[static_cast<std::size_t>(vars[i].id())];
  return g;
}

struct GradCheckReport {
  std::vector<double> analytic;
  std::vector<double> numeric;
  double max_rel_error = 0.0;
  std::size_t worst_index = 0;
  bool passed = true;
};

// Error between analytic and numeric derivatives: |a - n| / max(|a|, |n|, floor).
inline double relative_error(double analytic, double numeric, double floor) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / scale;
}

// Compares the tape gradient of f against central finite differences with
// step h. f must accept both std::vector<double> and std::vector<Var>.
template <class F>
GradCheckReport grad_check(F&& f, std::span<const double> x, double h, double tol,
                           double floor = 1e-3) {
  GradCheckReport report;
  report.analytic = gradient(f, x);
  report.numeric.resize(x.size());
  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    report.numeric[i] = (up - down) / (2.0 * h);
    const double err = relative_error(report.analytic[i], report.numeric[i], floor);
    if (!(err <= report.max_rel_error)) {
      report.max_rel_error = err;
      report.worst_index = i;
    }
  }
  report.passed = report.max_rel_error < tol;
  return report;
}

}  // namespace gie::ad

namespace gie {
using ad::Var;
using ad::value;
using ad::atanh;
using ad::atan_ratio;
using ad::atanh_ratio;
using ad::clamp_max;
using ad::softplus;
using ad::tan_ratio;
using ad::tanh_ratio;
}  // namespace gie
