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
#include <numbers>
#include <optional>

#include "cohj/dynamics.hpp"
#include "cohj/systems.hpp"

using namespace cohj;

namespace {

template <class F>
std::optional<ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// dq/dgamma of the implicit relation by central differences.
double dq_dgamma(const DampedSolution& s, double g) {
  const double h = 1e-5 * g;
  return (s.q_of_gamma(g + h) - s.q_of_gamma(g - h)) / (2 * h);
}

}  // namespace

TEST_CASE("trigonometric system") {
  const ScalarField H = trig_system({1.0, 1.0});
  CHECK(H(make_point({1.0}, {1.0}, std::numbers::pi / 2)) == doctest::Approx(1.5));
  const Gradient d = H.gradient(make_point({1.0}, {1.0}, 0.0));
  CHECK(d.dt == doctest::Approx(0.5));
  CHECK(d.dq[0] == doctest::Approx(1.0));
  CHECK(d.dp[0] == doctest::Approx(1.0));
  CHECK(trig_section(1.0)(Vec{1.0}, 0.0)[0] == doctest::Approx(1.31303529).epsilon(1e-8));
  CHECK(code_of([] { (void)trig_section(1.0)(Vec{1.0}, -1.0); }) == ErrorCode::SingularityError);
  CHECK(code_of([] { (void)cot_section(0.0)(Vec{1.0}, 0.0); }) == ErrorCode::SingularityError);
  CHECK(cot_section(1.0)(Vec{2.0}, 0.5)[0] == doctest::Approx(2.0 / std::tan(1.5)));
  CHECK(linear_section(3, 2.0)(Vec{1, 2, 3}, 0.0) == Vec{2, 4, 6});
}

TEST_CASE("oscillator Hamiltonians") {
  const PhasePoint x = make_point({1.0, 1.0}, {0.0, 0.0}, 0.0);
  CHECK(ws_system({1.0, 1.0, 0.0, 0.0})(x) == doctest::Approx(1.0));
  CHECK(ws_system({1.0, 1.0, 0.1, 0.1})(x) == doctest::Approx(1.2));
  CHECK(anis_system({1.0, 1.0, 1.0, 1.0})(x) == doctest::Approx(4.5));
  CHECK(anis_system({2.0, 1.0, 0.0, 0.0})(make_point({0.0, 1.0}, {2.0, 0.0}, 0.0)) == doctest::Approx(1.5));
  CHECK(code_of([] { (void)ws_system({1.0, 1.0, 0.1, 0.0})(make_point({0.0, 1.0}, {0.0, 0.0}, 0.0)); }) ==
        ErrorCode::DomainError);
  // Without a y^-2 term the origin is regular.
  CHECK(ws_system({1.0, 1.0, 0.1, 0.0})(make_point({1.0, 0.0}, {0.0, 0.0}, 0.0)) == doctest::Approx(0.6));
  const std::vector<PhasePoint> pts{make_point({0.7, 1.3}, {0.2, -0.4}, 0.1), make_point({-1.5, 0.6}, {1.0, 0.3}, 2.0)};
  CHECK(gradient_check(ws_system({1.3, 0.8, 0.1, 0.2}), pts) < 1e-6);
  CHECK(gradient_check(anis_system({1.3, 0.8, 0.1, 0.2}), pts) < 1e-6);
  const std::vector<PhasePoint> pts1{make_point({0.4}, {-0.3}, 0.9)};
  CHECK(gradient_check(trig_system({0.7, 2.0}), pts1) < 1e-6);
}

TEST_CASE("separable sections") {
  const OscillatorParams op{1.0, 1.0, 0.1, 0.1};
  const Vec g = ws_sections(op, 10.0, 10.0)(Vec{1.0, 1.0}, 0.0);
  CHECK(g[0] == doctest::Approx(std::sqrt(8.8)));
  CHECK(g[0] == doctest::Approx(2.966479).epsilon(1e-6));
  CHECK(g[1] == doctest::Approx(std::sqrt(8.8)));
  // The boundary of the allowed region: -x^2 + C = 0.
  const OscillatorParams free{1.0, 1.0, 0.0, 0.0};
  CHECK(ws_sections(free, 4.0, 10.0)(Vec{2.0, 1.0}, 0.0)[0] == 0.0);
  CHECK(code_of([&] { (void)ws_sections(op, 10.0, 10.0)(Vec{4.0, 1.0}, 0.0); }) == ErrorCode::DomainError);
  // anis: gamma_x = m sqrt(C - (4 omega0^2 x^2 + 2 k2 x)/m).
  const Vec a = anis_sections({1.0, 1.0, 0.5, 0.0}, 6.0, 2.0)(Vec{1.0, 1.0}, 0.0);
  CHECK(a[0] == doctest::Approx(1.0));
  CHECK(a[1] == doctest::Approx(1.0));
  const std::vector<BasePoint> pts{{{0.8, 1.2}, 0.0}, {{1.5, 0.7}, 1.0}};
  CHECK(section_gradient_check(ws_sections(op, 10.0, 10.0), pts) < 1e-6);
  CHECK(section_gradient_check(anis_sections(op, 10.0, 10.0), pts) < 1e-6);
}

TEST_CASE("complete solution inverses") {
  const OscillatorParams op{1.0, 1.0, 0.1, 0.1};
  for (const auto& cs : {ws_complete_solution(op), anis_complete_solution(op)}) {
    CHECK(cs.k == 2);
    const Vec lambda{9.0, 11.0};
    const Vec back = cs.inverse(cs.family(lambda).lift({0.6, 1.1}, 0.0));
    CHECK(back[0] == doctest::Approx(9.0));
    CHECK(back[1] == doctest::Approx(11.0));
  }
  const CompleteSolution trig = trig_complete_solution();
  CHECK(trig.inverse(trig.family({0.8}).lift({0.5}, 0.3))[0] == doctest::Approx(0.8));
}

TEST_CASE("damped oscillator") {
  const ScalarField H = damped_system({1.0, 0.1});
  const PhasePoint x = make_point({0.0}, {1.0}, 0.0);
  CHECK(H(x) == doctest::Approx(0.5));
  const TangentVector v = evolution_field_contact(H, x);
  CHECK(v.dq[0] == doctest::Approx(1.0));
  CHECK(v.dp[0] == doctest::Approx(-0.1));
  CHECK(v.dt == doctest::Approx(0.5));
  CHECK(code_of([] { (void)damped_system({0.0, 0.1}); }).has_value());
}

TEST_CASE("damped implicit solution branches") {
  // c1 = alpha, c2 = -alpha S; logarithmic iff c1^2 > 2 c2.
  CHECK(DampedSolution({1.0, 0.1}, 0.0, 0.0).branch() == DampedBranch::Logarithmic);
  CHECK(DampedSolution({1.0, 0.1}, 1.0, 0.0).branch() == DampedBranch::Logarithmic);
  CHECK(DampedSolution({1.0, 0.1}, -1.0, 0.0).branch() == DampedBranch::Arctangent);
  CHECK(DampedSolution({1.0, 0.0}, -1.0, 0.0).branch() == DampedBranch::Logarithmic);
  const DampedSolution s({1.0, 0.1}, 2.0, 0.5);
  CHECK(s.c1() == doctest::Approx(0.1));
  CHECK(s.c2() == doctest::Approx(-0.2));
  CHECK(code_of([] { DampedSolution({2.0, 0.1}, 0.0, 0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { DampedSolution({1.0, 1.0}, -0.5, 0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([&] { (void)s.slope(0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([&] { (void)s.q_of_gamma(0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { DampedSolution({1.0, 0.1}, 0.0, 0.0, {2.0, 1.0, 1e-12, ArctanForm::Integrated}); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("implicit relation inverts the reduced equation") {
  for (double S : {0.0, 1.0, -1.0, -3.0}) {
    const DampedSolution s({1.0, 0.1}, S, 0.3);
    const auto [lo, hi] = s.branch_interval();
    for (double g : {std::max(2 * lo, 0.1), 1.0, 5.0, std::min(hi, 50.0)})
      CHECK(dq_dgamma(s, g) == doctest::Approx(1.0 / s.slope(g)).epsilon(1e-6));
    const double q = s.q_of_gamma(1.7);
    CHECK(s.gamma(q) == doctest::Approx(1.7).epsilon(1e-9));
    const Section sec = s.section();
    CHECK(sec(Vec{q}, S)[0] == doctest::Approx(1.7).epsilon(1e-9));
    CHECK(sec.d_q(Vec{q}, S)[0][0] == doctest::Approx(s.slope(1.7)).epsilon(1e-8));
    CHECK(sec.d_t(Vec{q}, S)[0] == 1.0);
  }
}

TEST_CASE("printed arctangent coefficient fails the reduced equation") {
  // c1 = 0.5 so the two coefficients differ.
  const DampedParams p{1.0, 0.5};
  DampedSectionOptions printed;
  printed.arctan_form = ArctanForm::Printed;
  const DampedSolution good(p, -1.0, 0.0), bad(p, -1.0, 0.0, printed);
  REQUIRE(good.branch() == DampedBranch::Arctangent);
  CHECK(dq_dgamma(good, 1.0) == doctest::Approx(1.0 / good.slope(1.0)).epsilon(1e-6));
  CHECK(std::abs(dq_dgamma(bad, 1.0) - 1.0 / bad.slope(1.0)) > 0.1);
  // With c1 = 1 the forms coincide.
  const DampedSolution one({1.0, 1.0}, -1.0, 0.0), one_printed({1.0, 1.0}, -1.0, 0.0, printed);
  CHECK(one.q_of_gamma(0.7) == doctest::Approx(one_printed.q_of_gamma(0.7)));
}

TEST_CASE("known systems") {
  for (const char* id : {"trig", "ws", "anis", "damped"}) CHECK(is_known_system(id));
  CHECK_FALSE(is_known_system("kepler"));
  CHECK_FALSE(is_known_system(""));
}
