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

#include "cohj/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cohj {

ScalarField::ScalarField(std::size_t n, ValueFn value, GradientFn gradient, HessianFn hessian)
    : n_(n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "scalar field needs n >= 1");
  if (!value || !gradient) throw Error(ErrorCode::InvalidArgument, "scalar field needs value and gradient");
  impl_ = std::make_shared<const Impl>(Impl{std::move(value), std::move(gradient), std::move(hessian)});
}

ScalarField ScalarField::from_values(std::size_t n, ValueFn value) {
  auto grad = [value](const PhasePoint& x) { return fd_gradient(value, x); };
  return ScalarField(n, value, grad);
}

double ScalarField::operator()(const PhasePoint& x) const {
  if (x.dim() != n_) throw Error(ErrorCode::InvalidArgument, "field evaluated at point of wrong dimension");
  return impl_->value(x);
}

Gradient ScalarField::gradient(const PhasePoint& x) const {
  if (x.dim() != n_) throw Error(ErrorCode::InvalidArgument, "field evaluated at point of wrong dimension");
  return impl_->gradient(x);
}

OneForm ScalarField::differential(const PhasePoint& x) const {
  Gradient g = gradient(x);
  return {std::move(g.dq), std::move(g.dp), g.dt};
}

Hessian ScalarField::hessian(const PhasePoint& x) const {
  if (impl_->hessian) return impl_->hessian(x);
  return fd_hessian(impl_->gradient, x);
}

double fd_step(double coordinate) noexcept {
  static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  return base * std::max(1.0, std::abs(coordinate));
}

Vec to_flat(const Gradient& g) {
  Vec y(g.dq);
  y.insert(y.end(), g.dp.begin(), g.dp.end());
  y.push_back(g.dt);
  return y;
}

namespace {

Gradient gradient_from_flat(const Vec& y, std::size_t n) {
  Gradient g;
  g.dq.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
  g.dp.assign(y.begin() + static_cast<std::ptrdiff_t>(n), y.begin() + static_cast<std::ptrdiff_t>(2 * n));
  g.dt = y[2 * n];
  return g;
}

template <class F>
Gradient central_differences(const F& f, const PhasePoint& x, double relative_step) {
  const std::size_t n = x.dim();
  Vec y = to_flat(x);
  Vec d(2 * n + 1);
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double h = relative_step < 0 ? fd_step(y[k]) : relative_step * std::max(1.0, std::abs(y[k]));
    Vec yp = y, ym = y;
    yp[k] += h;
    ym[k] -= h;
    d[k] = (f(point_from_flat(yp, n)) - f(point_from_flat(ym, n))) / ((yp[k] - ym[k]));
  }
  return gradient_from_flat(d, n);
}

}  // namespace

Gradient fd_gradient(const ScalarField::ValueFn& f, const PhasePoint& x) {
  return central_differences(f, x, -1.0);
}

Gradient fd_gradient(const ScalarField::ValueFn& f, const PhasePoint& x, double relative_step) {
  return central_differences(f, x, relative_step);
}

Hessian fd_hessian(const ScalarField::GradientFn& g, const PhasePoint& x) {
  const std::size_t n = x.dim();
  const std::size_t m = 2 * n + 1;
  Vec y = to_flat(x);
  Hessian h(m, Vec(m, 0.0));
  for (std::size_t k = 0; k < m; ++k) {
    const double step = fd_step(y[k]);
    Vec yp = y, ym = y;
    yp[k] += step;
    ym[k] -= step;
    Vec gp = to_flat(g(point_from_flat(yp, n)));
    Vec gm = to_flat(g(point_from_flat(ym, n)));
    for (std::size_t j = 0; j < m; ++j) h[j][k] = (gp[j] - gm[j]) / (yp[k] - ym[k]);
  }
  // Symmetrize; the exact Hessian is symmetric.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) h[i][j] = h[j][i] = 0.5 * (h[i][j] + h[j][i]);
  return h;
}

double gradient_check(const ScalarField& f, std::span<const PhasePoint> points) {
  double worst = 0.0;
  auto value = [&f](const PhasePoint& x) { return f(x); };
  for (const auto& x : points) {
    Vec a = to_flat(f.gradient(x));
    Vec d = to_flat(fd_gradient(value, x));
    for (std::size_t k = 0; k < a.size(); ++k)
      worst = std::max(worst, std::abs(a[k] - d[k]) / std::max(1.0, std::abs(a[k])));
  }
  return worst;
}

ScalarField constant_field(std::size_t n, double c) {
  return ScalarField(
      n, [c](const PhasePoint&) { return c; },
      [n](const PhasePoint&) { return Gradient{Vec(n, 0.0), Vec(n, 0.0), 0.0}; },
      [n](const PhasePoint&) { return Hessian(2 * n + 1, Vec(2 * n + 1, 0.0)); });
}

ScalarField coordinate_field(std::size_t n, std::size_t k) {
  if (k > 2 * n) throw Error(ErrorCode::InvalidArgument, "coordinate index out of range");
  return ScalarField(
      n, [k](const PhasePoint& x) { return to_flat(x)[k]; },
      [n, k](const PhasePoint&) {
        Vec d(2 * n + 1, 0.0);
        d[k] = 1.0;
        return gradient_from_flat(d, n);
      },
      [n](const PhasePoint&) { return Hessian(2 * n + 1, Vec(2 * n + 1, 0.0)); });
}

}  // namespace cohj
