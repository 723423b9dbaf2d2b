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

#include <doctest.h>

#include <cmath>
#include <optional>
#include <sstream>

#include "cohj/characteristics.hpp"
#include "cohj/systems.hpp"

using namespace cohj;

namespace {

const IntegratorConfig kTight = IntegratorConfig::rk45(1e-10, 1e-12);

Vec labels(double lo, double hi, std::size_t count) {
  Vec v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return v;
}

template <class F>
std::optional<ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("harmonic oscillator reconstructs q cot(t + C)") {
  const ScalarField H = trig_system({0.0, 1.0});
  const Section exact = cot_section(1.0);
  const auto init = [&](double q) { return exact(Vec{q}, 0.0)[0]; };
  const CharacteristicSolution sol = solve_characteristics_cosymplectic(H, labels(0.5, 1.5, 41), init, 0.0, 0.5, 11, kTight);
  CHECK(sol.times().size() == 11);
  CHECK(sol.curves().size() == 41);
  double err = 0.0;
  for (std::size_t k = 0; k < sol.times().size(); ++k) {
    const auto [lo, hi] = sol.q_range(k);
    const double t = sol.times()[k];
    for (int i = 0; i <= 20; ++i) {
      const double q = lo + (hi - lo) * i / 20.0;
      err = std::max(err, std::abs(sol.gamma(q, t) - exact(Vec{q}, t)[0]));
    }
  }
  // gamma is linear in q, so interpolation adds nothing.
  CHECK(err < 1e-8);
}

TEST_CASE("zero Hamiltonian keeps curves fixed") {
  const ScalarField H = constant_field(1, 0.0);
  const auto sol = solve_characteristics_cosymplectic(H, labels(-1, 1, 5), [](double q) { return q * q; }, 0.0, 1.0, 3, kTight);
  for (const auto& c : sol.curves())
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(c.q[k] == c.label);
      CHECK(c.gamma[k] == c.label * c.label);
    }
  // Midway between the curves at 0 and 0.5.
  CHECK(sol.gamma(0.25, 0.7) == doctest::Approx(0.125));
}

TEST_CASE("as-printed trig characteristics reproduce q / tanh(t + C)") {
  const ScalarField H = trig_system({1.0, 1.0});
  const Section g = trig_section(1.0);
  const auto init = [&](double q) { return g(Vec{q}, 0.0)[0]; };
  const auto sol = solve_characteristics_cosymplectic(H, labels(-1, 1, 41), init, 0.0, 0.5, 11, kTight, ResidualMode::AsPrinted);
  double err = 0.0;
  for (std::size_t k = 0; k < 11; ++k) {
    const auto [lo, hi] = sol.q_range(k);
    for (int i = 0; i <= 10; ++i) {
      const double q = lo + (hi - lo) * i / 10.0, t = sol.times()[k];
      err = std::max(err, std::abs(sol.gamma(q, t) - g(Vec{q}, t)[0]));
    }
  }
  CHECK(err < 1e-8);
}

TEST_CASE("reconstructed field satisfies the equation") {
  const ScalarField H = trig_system({0.0, 1.0});
  // Affine data stays affine under a linear flow, so interpolation is exact.
  const auto init = [](double q) { return 0.3 - 0.5 * q; };
  const std::size_t outputs = 501;
  const auto sol = solve_characteristics_cosymplectic(H, labels(-1, 1, 201), init, 0.0, 0.5, outputs, kTight);
  const std::size_t dk = 1;
  const double dt = 0.5 * static_cast<double>(dk) / static_cast<double>(outputs - 1);
  double worst = 0.0;
  for (std::size_t k = 10; k + 10 < outputs; k += 50) {
    const double t = sol.times()[k];
    const auto [lo0, hi0] = sol.q_range(k - dk);
    const auto [lo1, hi1] = sol.q_range(k + dk);
    const double lo = std::max(lo0, lo1) + 0.1, hi = std::min(hi0, hi1) - 0.1;
    for (int i = 0; i <= 4; ++i) {
      const double q = lo + (hi - lo) * i / 4.0, h = 0.05;
      const double g = sol.gamma(q, t);
      const double g_t = (sol.gamma(q, t + dt) - sol.gamma(q, t - dt)) / (2 * dt);
      const double g_q = (sol.gamma(q + h, t) - sol.gamma(q - h, t)) / (2 * h);
      // H = (p^2 + q^2)/2: gamma_t + gamma gamma_q + q = 0.
      worst = std::max(worst, std::abs(g_t + g * g_q + q));
    }
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("crossing characteristics are reported") {
  const ScalarField H = trig_system({0.0, 1.0});
  // Curves q(t) = l (cos t - 3 sin t) all meet at tan t = 1/3.
  CHECK(code_of([&] {
          solve_characteristics_cosymplectic(H, labels(-1, 1, 11), [](double q) { return -3.0 * q; }, 0.0, 0.5, 21, kTight);
        }) == ErrorCode::CharacteristicsCrossed);
}

TEST_CASE("queries outside the hull and invalid inputs") {
  const ScalarField H = constant_field(1, 0.0);
  const auto sol = solve_characteristics_cosymplectic(H, labels(0, 1, 3), [](double q) { return q; }, 0.0, 1.0, 2, kTight);
  CHECK(code_of([&] { (void)sol.gamma(1.5, 0.5); }) == ErrorCode::DomainError);
  CHECK(code_of([&] { (void)sol.gamma(0.5, 2.0); }) == ErrorCode::DomainError);
  CHECK_THROWS_AS(solve_characteristics_cosymplectic(H, Vec{0.0, 0.0}, [](double q) { return q; }, 0, 1, 2, kTight), Error);
  CHECK_THROWS_AS(solve_characteristics_cosymplectic(H, Vec{0.0}, [](double q) { return q; }, 0, 1, 2, kTight), Error);
  CHECK_THROWS_AS(solve_characteristics_cosymplectic(H, labels(0, 1, 3), [](double q) { return q; }, 0, 1, 1, kTight), Error);
  CHECK_THROWS_AS(solve_characteristics_cosymplectic(constant_field(2, 0.0), labels(0, 1, 3), [](double q) { return q; }, 0, 1, 2, kTight), Error);
  CHECK(parse_mode("theorem") == ResidualMode::Theorem);
  CHECK(parse_mode("as-printed") == ResidualMode::AsPrinted);
  CHECK_THROWS_AS(parse_mode("printed"), Error);
  CHECK(std::string(mode_name(ResidualMode::AsPrinted)) == "as-printed");
}

TEST_CASE("curve CSV") {
  const auto sol = solve_characteristics_cosymplectic(constant_field(1, 0.0), labels(0, 1, 2), [](double q) { return 2 * q; }, 0.0, 1.0, 2, kTight);
  std::ostringstream os;
  sol.write_csv(os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "label,t,q,gamma");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 4);
}
