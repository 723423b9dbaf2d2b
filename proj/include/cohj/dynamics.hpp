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
#include <iosfwd>

#include "cohj/scalar_field.hpp"

namespace cohj {

enum class IntegratorMethod { RK4, RK45 };

struct IntegratorConfig {
  IntegratorMethod method = IntegratorMethod::RK45;
  double step = 1e-2;  // RK4 only; the span is split into equal steps no larger than this
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t max_steps = 1'000'000;

  static IntegratorConfig rk4(double step) {
    IntegratorConfig c;
    c.method = IntegratorMethod::RK4;
    c.step = step;
    return c;
  }
  static IntegratorConfig rk45(double rel_tol, double abs_tol) {
    IntegratorConfig c;
    c.rel_tol = rel_tol;
    c.abs_tol = abs_tol;
    return c;
  }
};

/// Throws InvalidArgument unless tolerances and step are positive and max_steps >= 1.
void validate(const IntegratorConfig& cfg);

/// Right-hand side of an autonomous ODE on a flat state vector.
using OdeRhs = std::function<Vec(const Vec&)>;

/// Accepted steps of an ODE solve, including the initial state.
struct OdeSolution {
  Vec s;
  std::vector<Vec> y;
};

/// Integrates y' = rhs(y) over [s0, s1]. Throws StepLimitExceeded when more
/// than cfg.max_steps steps would be needed and NonFiniteState when the state
/// or the right-hand side stops being finite (a DomainError raised inside rhs
/// is reported the same way).
OdeSolution solve_ode(const OdeRhs& rhs, const Vec& y0, double s0, double s1, const IntegratorConfig& cfg);

/// Samples of an integral curve in the external flow parameter s.
struct Trajectory {
  Vec s;
  std::vector<PhasePoint> x;
  Vec channel;  // optional per-sample scalar, e.g. H along the flow

  std::size_t size() const noexcept { return s.size(); }
  bool empty() const noexcept { return s.empty(); }
};

using VectorField = std::function<TangentVector(const PhasePoint&)>;

/// Cosymplectic evolution field R_H = d/dt + H_p d/dq - H_q d/dp.
TangentVector evolution_field_cosymplectic(const ScalarField& H, const PhasePoint& x);

/// Contact evolution field X_H: dq = H_p, dp_i = -(p_i H_t + H_{q^i}),
/// dt = sum p_i H_{p_i} - H.
TangentVector evolution_field_contact(const ScalarField& H, const PhasePoint& x);

VectorField cosymplectic_field(ScalarField H);
VectorField contact_field(ScalarField H);

/// Integrates the autonomous extended (2n+1)-dimensional system. When
/// `channel` is given it is sampled at every accepted step.
Trajectory integrate(const VectorField& field, const PhasePoint& x0, double s0, double s1,
                     const IntegratorConfig& cfg, const ScalarField* channel = nullptr);

enum class DriftMode {
  Conservation,  // max |H - H(0)|
  Dissipation,   // max |H - H(0) exp(-int H_t ds)|
};

struct DriftReport {
  double max_abs = 0.0;
  double max_rel = 0.0;
};

DriftReport hamiltonian_drift(const ScalarField& H, const Trajectory& traj, DriftMode mode);

/// CSV with header `s,t,q1..qn,p1..pn,H`, one row per sample, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const ScalarField& H);

}  // namespace cohj
