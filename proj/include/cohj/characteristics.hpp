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

#include "cohj/dynamics.hpp"

namespace cohj {

/// Which first-order PDE a one-dimensional section is held to.
///   Theorem:   gamma_t + H_p gamma_q + H_q = 0, characteristics dgamma/dt = -H_q
///   AsPrinted: gamma_t + H_p gamma_q - H_q = 0, characteristics dgamma/dt = +H_q
/// AsPrinted reproduces the trigonometric-system example as published.
enum class ResidualMode { Theorem, AsPrinted };

const char* mode_name(ResidualMode mode) noexcept;
ResidualMode parse_mode(const std::string& name);

/// One characteristic curve, sampled at the solver's output times.
struct CharacteristicCurve {
  double label = 0.0;  // initial q
  Vec q;
  Vec gamma;
};

class CharacteristicSolution {
 public:
  CharacteristicSolution(Vec times, std::vector<CharacteristicCurve> curves);

  const Vec& times() const noexcept { return times_; }
  const std::vector<CharacteristicCurve>& curves() const noexcept { return curves_; }

  /// Range of curve positions at output slice k.
  std::pair<double, double> q_range(std::size_t k) const;

  /// Linear interpolation in q between adjacent curves at fixed t. Off-slice
  /// times blend the two neighbouring slices linearly. Throws DomainError
  /// outside the hull of the curve positions.
  double gamma(double q, double t) const;

  /// CSV `label,t,q,gamma`, one row per curve and output time.
  void write_csv(std::ostream& out) const;

 private:
  double slice_value(std::size_t k, double q) const;

  Vec times_;
  std::vector<CharacteristicCurve> curves_;
};

/// Integrates dq/dt = H_p(q, gamma, t), dgamma/dt = -/+ H_q(q, gamma, t) from
/// each label (strictly increasing initial positions) and checks at each of
/// the `outputs` uniformly spaced times in [t0, t1] that the curves keep their
/// ordering; a violation throws CharacteristicsCrossed. n = 1 only.
CharacteristicSolution solve_characteristics_cosymplectic(const ScalarField& H, const Vec& labels,
                                                          const std::function<double(double)>& initial, double t0,
                                                          double t1, std::size_t outputs, const IntegratorConfig& cfg,
                                                          ResidualMode mode = ResidualMode::Theorem);

}  // namespace cohj
