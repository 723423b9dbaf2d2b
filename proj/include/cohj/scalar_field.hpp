// Copyright 2026 The cohj Authors
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

#include <functional>
#include <memory>
#include <span>

#include "cohj/types.hpp"

namespace cohj {

/// Partial derivatives (dH/dq, dH/dp, dH/dt) at a point.
struct Gradient {
  Vec dq;
  Vec dp;
  double dt = 0.0;
};

/// Dense (2n+1)x(2n+1) second-derivative matrix in flat coordinate order.
using Hessian = std::vector<Vec>;

/// A smooth function on T*Q x R together with its first partial derivatives
/// and, optionally, analytic second derivatives. Values are immutable after
/// construction and safe to share across threads.
class ScalarField {
 public:
  using ValueFn = std::function<double(const PhasePoint&)>;
  using GradientFn = std::function<Gradient(const PhasePoint&)>;
  using HessianFn = std::function<Hessian(const PhasePoint&)>;

  ScalarField(std::size_t n, ValueFn value, GradientFn gradient, HessianFn hessian = {});

  /// Wraps a value-only function; derivatives come from central differences.
  static ScalarField from_values(std::size_t n, ValueFn value);

  std::size_t dim() const noexcept { return n_; }
  double operator()(const PhasePoint& x) const;
  Gradient gradient(const PhasePoint& x) const;
  OneForm differential(const PhasePoint& x) const;

  bool has_analytic_hessian() const noexcept { return static_cast<bool>(impl_->hessian); }
  /// Analytic when supplied, otherwise central differences of the gradient.
  Hessian hessian(const PhasePoint& x) const;

 private:
  struct Impl {
    ValueFn value;
    GradientFn gradient;
    HessianFn hessian;
  };
  std::size_t n_;
  std::shared_ptr<const Impl> impl_;
};

/// Central-difference step cbrt(eps) * max(1, |c|).
double fd_step(double coordinate) noexcept;

/// Central-difference gradient of an arbitrary function of the point.
Gradient fd_gradient(const ScalarField::ValueFn& f, const PhasePoint& x);
Gradient fd_gradient(const ScalarField::ValueFn& f, const PhasePoint& x, double relative_step);

/// Central differences of an analytic gradient.
Hessian fd_hessian(const ScalarField::GradientFn& g, const PhasePoint& x);

Vec to_flat(const Gradient& g);

/// Largest relative gap |analytic - fd| / max(1, |analytic|) over the given
/// points and all 2n+1 partials.
double gradient_check(const ScalarField& f, std::span<const PhasePoint> points);

/// Elementary fields.
ScalarField constant_field(std::size_t n, double c);
/// Coordinate function x_k in flat layout (q_0..q_{n-1}, p_0..p_{n-1}, t).
ScalarField coordinate_field(std::size_t n, std::size_t k);

}  // namespace cohj
