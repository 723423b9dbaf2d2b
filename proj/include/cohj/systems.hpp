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

#include "cohj/hamilton_jacobi.hpp"

// Built-in example systems with analytic derivatives, their known
// Hamilton-Jacobi sections and complete solutions.

namespace cohj {

struct TrigParams {
  double alpha = 1.0;
  double w = 1.0;
};

/// Two-dimensional oscillators. `omega0` multiplies both potentials; the
/// linear coefficient of the anisotropic potential is `k2` (also written k
/// or K in the literature).
struct OscillatorParams {
  double m = 1.0;
  double omega0 = 1.0;
  double k2 = 0.0;
  double k3 = 0.0;
};

struct DampedParams {
  double m = 1.0;
  double alpha = 0.1;
};

/// H = p^2/2 + q^2/2 + alpha sin(w t) q^2 p^2 / 2. alpha = 0 is the harmonic oscillator.
ScalarField trig_system(const TrigParams& params);

/// gamma = q / tanh(t + C). Throws SingularityError for |t + C| < 1e-3.
Section trig_section(double C);

/// gamma = q cot(t + C), the theorem-level solution family of the harmonic
/// oscillator. Throws SingularityError within 1e-3 of a pole of cot.
Section cot_section(double C);

/// gamma = a q (any dimension, same slope in every component).
Section linear_section(std::size_t n, double a);

/// Winternitz-Smorodinsky oscillator,
///   H = |p|^2/2m + omega0^2 (x^2 + y^2)/2 + k2/x^2 + k3/y^2.
/// Throws DomainError for |x| < 1e-6 (k2 != 0) or |y| < 1e-6 (k3 != 0).
ScalarField ws_system(const OscillatorParams& params);

/// H = |p|^2/2m + omega0^2 (4x^2 + y^2)/2 + k2 x + k3/y^2.
ScalarField anis_system(const OscillatorParams& params);

/// Separable sections (gamma_x(x), gamma_y(y)) combined into one section of
/// T*R^2 x R. gamma_x^2 = m(-omega0^2 x^2 - 2k2/x^2) + C for ws and
/// gamma_x = m sqrt(C - (4 omega0^2 x^2 + 2 k2 x)/m) for anis; gamma_y^2 =
/// m(-omega0^2 y^2 - 2k3/y^2) + K for both. Throws DomainError where a square
/// root argument is negative (derivatives need it >= 1e-12).
Section ws_sections(const OscillatorParams& params, double C, double K);
Section anis_sections(const OscillatorParams& params, double C, double K);

/// Complete solutions with parameters (C, K) and analytic inverses.
CompleteSolution ws_complete_solution(const OscillatorParams& params);
CompleteSolution anis_complete_solution(const OscillatorParams& params);
/// One-parameter family q / tanh(t + C); inverse C = atanh(q/p) - t.
CompleteSolution trig_complete_solution();

/// H = p^2/2m + alpha S with V = 0; the t slot carries S.
ScalarField damped_system(const DampedParams& params);

/// Coefficient of the arctangent term of the implicit damped-oscillator
/// solution. `Printed` uses 2/sqrt(2c2 - c1^2); `Integrated` uses
/// 2 c1/sqrt(2c2 - c1^2), the antiderivative of the reduced ODE. They agree
/// only when c1 = 1. The logarithmic branch is unaffected.
enum class ArctanForm { Integrated, Printed };

struct DampedSectionOptions {
  double gamma_lo = 1e-6;
  double gamma_hi = 1e3;
  double tol = 1e-12;
  ArctanForm arctan_form = ArctanForm::Integrated;
};

enum class DampedBranch { Logarithmic, Arctangent };

/// Implicit solution of the reduced damped-oscillator equation
///   dgamma/dq = -gamma/2 - c1 - c2/gamma,  c1 = alpha m, c2 = -m^2 alpha S.
class DampedSolution {
 public:
  /// Requires m = 1. Throws DomainError on the degenerate discriminant
  /// c1^2 = 2 c2 with c1 != 0.
  DampedSolution(const DampedParams& params, double S, double C, DampedSectionOptions options = {});

  double c1() const noexcept { return c1_; }
  double c2() const noexcept { return c2_; }
  DampedBranch branch() const noexcept { return branch_; }

  /// q as a function of gamma from the implicit relation.
  double q_of_gamma(double gamma) const;
  /// Right-hand side of the reduced equation.
  double slope(double gamma) const;
  /// Bracketing interval (lo, hi) of the monotone branch used for root finding.
  std::pair<double, double> branch_interval() const;
  /// Bisection on the branch interval. Throws RootFindFailure without a bracket.
  double gamma(double q) const;

  /// Section gamma(q) at the fixed S, dgamma/dq from the reduced equation and
  /// dgamma/dS = 1.
  Section section() const;

 private:
  DampedParams params_;
  double S_;
  double C_;
  DampedSectionOptions options_;
  double c1_;
  double c2_;
  DampedBranch branch_;
};

/// Looks up a built-in system by id: trig, ws, anis, damped.
bool is_known_system(const std::string& id) noexcept;

}  // namespace cohj
