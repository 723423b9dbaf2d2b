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
#include <optional>
#include <span>

#include "cohj/dynamics.hpp"
#include "cohj/geometry.hpp"

namespace cohj {

/// J[j][i] = d gamma^j / d q^i.
using Jacobian = std::vector<Vec>;

/// A point (q, t) of Q x R.
struct BasePoint {
  Vec q;
  double t = 0.0;
};

/// A section gamma of T*Q x R -> Q x R, (q, t) -> (q, gamma(q, t), t), with
/// its q- and t-derivatives.
class Section {
 public:
  using GammaFn = std::function<Vec(const Vec& q, double t)>;
  using JacobianFn = std::function<Jacobian(const Vec& q, double t)>;
  using TimeDerivativeFn = std::function<Vec(const Vec& q, double t)>;

  Section(std::size_t n, GammaFn gamma, JacobianFn d_q, TimeDerivativeFn d_t);

  /// Derivatives by central differences of gamma.
  static Section from_values(std::size_t n, GammaFn gamma);

  std::size_t dim() const noexcept { return n_; }
  Vec operator()(const Vec& q, double t) const;
  Jacobian d_q(const Vec& q, double t) const;
  Vec d_t(const Vec& q, double t) const;

  /// The point (q, gamma(q, t), t).
  PhasePoint lift(const Vec& q, double t) const;

 private:
  struct Impl {
    GammaFn gamma;
    JacobianFn d_q;
    TimeDerivativeFn d_t;
  };
  std::size_t n_;
  std::shared_ptr<const Impl> impl_;
};

/// Largest relative gap between analytic and central-difference derivatives.
double section_gradient_check(const Section& g, std::span<const BasePoint> points);

/// Tangent vector on Q x R.
struct BaseVector {
  Vec dq;
  double dt = 0.0;
};

/// T pi o R_H o gamma: dq = H_p, dt = 1 at (q, gamma(q, t), t).
BaseVector project_field_cosymplectic(const ScalarField& H, const Section& g, const Vec& q, double t);

/// T pi o X_H o gamma: dq = H_p, dt = sum p_i H_{p_i} - H at (q, gamma(q, t), t).
BaseVector project_field_contact(const ScalarField& H, const Section& g, const Vec& q, double t);

/// dgamma^j/dt + sum_i H_{p_i} dgamma^j/dq^i + H_{q^j}, j = 1..n.
Vec hj_residual_cosymplectic(const ScalarField& H, const Section& g, const Vec& q, double t);

/// The one-dimensional trigonometric-system PDE in its printed form,
///   gamma_t + (p + a sin(wt) q^2 p) gamma_q - (q + a sin(wt) p^2 q),  p = gamma.
/// Its source term has the opposite sign of hj_residual_cosymplectic.
double hj_residual_trig_as_printed(double alpha, double w, const Section& g, double q, double t);

/// p_j H_t + H_{q^j} + (sum_i p_i H_{p_i} - H) dgamma^j/dt + sum_i H_{p_i} dgamma^j/dq^i.
Vec hj_residual_contact(const ScalarField& H, const Section& g, const Vec& q, double t);

/// Integrates the projected field on Q x R from (q0, t0), lifts it through
/// gamma and compares with the full evolution field integrated from the lifted
/// initial point. Returns the sup-norm of the fiber discrepancy over the flow
/// parameter interval [0, span].
double relatedness_error(StructureKind kind, const ScalarField& H, const Section& g, const Vec& q0, double t0,
                         double span, const IntegratorConfig& cfg);

struct ClosednessReport {
  bool closed = true;
  double max_defect = 0.0;
};

/// max |dgamma^j/dq^i - dgamma^i/dq^j| over the samples; closed when it is <= tol.
ClosednessReport is_closed(const Section& g, std::span<const BasePoint> points, double tol);

/// Pullback gamma^* eta = dt - sum gamma_i dq^i on the base directions:
/// at = 1, aq = -gamma, ap = 0. A diagnostic; never zero for a section.
OneForm legendrian_defect(const Section& g, const Vec& q, double t);

/// An n-parameter family lambda -> gamma_lambda of Hamilton-Jacobi solutions
/// together with the inverse map x -> lambda when available.
struct CompleteSolution {
  std::size_t k = 0;
  std::function<Section(const Vec& lambda)> family;
  std::function<Vec(const PhasePoint& x)> inverse;
};

/// max |gamma_{inverse(x)}(x.q, x.t) - x.p| over the points.
double complete_solution_consistency(const CompleteSolution& cs, std::span<const PhasePoint> points);

/// Parameter function f_i = pi_i o alpha o Phi^{-1} as a field, with central
/// difference derivatives (step 1e-6 max(1, |c|)).
ScalarField parameter_function(const CompleteSolution& cs, std::size_t i, std::size_t n);

/// max over points and i < j of |{f_i, f_j}| in the cosymplectic Poisson bracket.
double involution_defect(const CompleteSolution& cs, std::span<const PhasePoint> points);

struct ParameterEvolution {
  double max_defect = 0.0;
  Vec defect;  // |df/ds - H f_t| per sample
};

/// Compares the finite-difference slope of f along a contact trajectory with
/// H * df/dt at every sample.
ParameterEvolution contact_parameter_evolution(const ScalarField& H, const ScalarField& f, const Trajectory& traj);

}  // namespace cohj
