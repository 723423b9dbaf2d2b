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
#include <random>

#include "cohj/hamilton_jacobi.hpp"
#include "cohj/systems.hpp"
#include "support/oracles.hpp"

using namespace cohj;

namespace {

const IntegratorConfig kTight = IntegratorConfig::rk45(1e-10, 1e-12);

Section constant_section(const Vec& c) {
  const std::size_t n = c.size();
  return Section(
      n, [c](const Vec&, double) { return c; }, [n](const Vec&, double) { return Jacobian(n, Vec(n, 0.0)); },
      [n](const Vec&, double) { return Vec(n, 0.0); });
}

// H depending on q and t only.
ScalarField potential_only() {
  return ScalarField(
      1, [](const PhasePoint& x) { return std::sin(x.q[0]) + x.t; },
      [](const PhasePoint& x) { return Gradient{{std::cos(x.q[0])}, {0.0}, 1.0}; });
}

}  // namespace

TEST_CASE("sections expose values, derivatives and lifts") {
  const Section g = trig_section(1.0);
  CHECK(g(Vec{0.0}, 0.3)[0] == 0.0);
  CHECK(g(Vec{1.0}, 0.0)[0] == doctest::Approx(1.31303529).epsilon(1e-8));
  const PhasePoint x = g.lift({2.0}, 0.5);
  CHECK(x.q[0] == 2.0);
  CHECK(x.t == 0.5);
  CHECK(x.p[0] == doctest::Approx(2.0 / std::tanh(1.5)));
  const std::vector<BasePoint> pts{{{0.3}, 0.1}, {{-1.2}, 0.7}, {{1.9}, 0.4}};
  CHECK(section_gradient_check(g, pts) < 1e-5);
  CHECK(section_gradient_check(cot_section(2.0), pts) < 1e-5);
  CHECK(section_gradient_check(Section::from_values(1, [](const Vec& q, double t) { return Vec{q[0] * t}; }), pts) < 1e-8);
}

TEST_CASE("projected cosymplectic field") {
  const BaseVector v = project_field_cosymplectic(trig_system({1.0, 1.0}), trig_section(1.0), {1.0}, 0.0);
  CHECK(v.dq[0] == doctest::Approx(1.0 / std::tanh(1.0)));
  CHECK(v.dt == 1.0);
  const BaseVector z = project_field_cosymplectic(potential_only(), trig_section(1.0), {0.4}, 0.2);
  CHECK(z.dq[0] == 0.0);
  CHECK(z.dt == 1.0);
  // C chosen so that gamma_x(1) = 2: -1 - 0.2 + C = 4.
  const OscillatorParams op{1.0, 1.0, 0.1, 0.1};
  const BaseVector w = project_field_cosymplectic(ws_system(op), ws_sections(op, 5.2, 10.0), {1.0, 1.0}, 0.0);
  CHECK(w.dq[0] == doctest::Approx(2.0));
}

TEST_CASE("projected contact field") {
  const ScalarField H = damped_system({1.0, 0.1});
  const BaseVector a = project_field_contact(H, constant_section({1.0}), {0.0}, 0.0);
  CHECK(a.dq[0] == doctest::Approx(1.0));
  CHECK(a.dt == doctest::Approx(0.5));
  const BaseVector b = project_field_contact(H, constant_section({2.0}), {0.0}, 0.0);
  CHECK(b.dq[0] == doctest::Approx(2.0));
  CHECK(b.dt == doctest::Approx(2.0));
  const BaseVector c = project_field_contact(constant_field(1, 0.0), constant_section({3.0}), {1.0}, 1.0);
  CHECK(c.dq[0] == 0.0);
  CHECK(c.dt == 0.0);
}

TEST_CASE("cosymplectic residual examples") {
  const ScalarField osc = trig_system({0.0, 1.0});
  CHECK(std::abs(hj_residual_cosymplectic(osc, cot_section(2.0), {1.0}, 0.0)[0]) < 1e-12);
  const ScalarField trig = trig_system({1.0, 1.0});
  CHECK(hj_residual_cosymplectic(trig, linear_section(1, 2.0), {1.0}, 0.0)[0] == doctest::Approx(5.0));
  const OscillatorParams op{1.0, 1.0, 0.1, 0.1};
  const Section g = ws_sections(op, 10.0, 10.0);
  for (double x : {0.4, 1.0, 2.0, 2.8})
    for (double r : hj_residual_cosymplectic(ws_system(op), g, {x, 1.3}, 0.7)) CHECK(std::abs(r) < 1e-10);
}

TEST_CASE("cosymplectic residual matches the oracle for random sections") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 20; ++k) {
    const auto Hp = oracle::Polynomial::random(rng, 5);
    const ScalarField H = Hp.field(2, true);
    const Section g = Section::from_values(2, [](const Vec& q, double t) { return Vec{q[0] * q[1] + t, std::sin(q[0]) - t * q[1]}; });
    const Vec q{0.3 + 0.1 * k, -0.5}, gq{q[0] * q[1] + 0.2, std::sin(q[0]) - 0.2 * q[1]};
    const double t = 0.2;
    const Vec d = Hp.gradient({q[0], q[1], gq[0], gq[1], t});
    // J[j][i] = dgamma^j/dq^i, written out.
    const double J[2][2] = {{q[1], q[0]}, {std::cos(q[0]), -t}};
    const double gt[2] = {1.0, -q[1]};
    const Vec r = hj_residual_cosymplectic(H, g, q, t);
    for (int j = 0; j < 2; ++j)
      CHECK(r[j] == doctest::Approx(gt[j] + d[2] * J[j][0] + d[3] * J[j][1] + d[j]).epsilon(1e-6));
  }
}

TEST_CASE("as-printed trig residual examples") {
  for (double t : {0.0, 0.3, 1.0})
    for (double q : {-1.5, 0.2, 2.0}) {
      CHECK(std::abs(hj_residual_trig_as_printed(1.0, 1.0, trig_section(1.0), q, t)) < 1e-9);
      CHECK(std::abs(hj_residual_trig_as_printed(1.0, 1.0, linear_section(1, 1.0), q, t)) < 1e-12);
    }
  CHECK(hj_residual_trig_as_printed(1.0, 1.0, linear_section(1, 2.0), 1.0, 0.0) == doctest::Approx(3.0));
  // The same section fails the theorem-level equation: the sign regression.
  CHECK(std::abs(hj_residual_cosymplectic(trig_system({1.0, 1.0}), trig_section(1.0), {1.0}, 0.5)[0]) > 0.5);
}

TEST_CASE("contact residual examples") {
  const ScalarField H = damped_system({1.0, 0.1});
  CHECK(hj_residual_contact(H, constant_section({1.0}), {0.0}, 0.0)[0] == doctest::Approx(0.1));
  CHECK(hj_residual_contact(constant_field(1, 0.0), constant_section({2.5}), {0.3}, 0.1)[0] == 0.0);
  for (double S : {0.0, 1.0, -1.0}) {
    const DampedSolution sol({1.0, 0.1}, S, 0.0);
    const Section g = sol.section();
    for (double q : {-1.0, 0.0, 0.5}) CHECK(std::abs(hj_residual_contact(H, g, {q}, S)[0]) < 1e-8);
  }
  // gamma = b - alpha q solves the contact equation for every S.
  const Section lin(
      1, [](const Vec& q, double) { return Vec{0.7 - 0.1 * q[0]}; }, [](const Vec&, double) { return Jacobian{{-0.1}}; },
      [](const Vec&, double) { return Vec{0.0}; });
  for (double S : {-2.0, 0.0, 3.0}) CHECK(std::abs(hj_residual_contact(H, lin, {0.4}, S)[0]) < 1e-15);
}

TEST_CASE("cosymplectic relatedness") {
  const ScalarField osc = trig_system({0.0, 1.0});
  CHECK(relatedness_error(StructureKind::Cosymplectic, osc, cot_section(2.0), {1.0}, 0.0, 1.0, kTight) < 1e-6);
  const OscillatorParams op{1.0, 1.0, 0.1, 0.1};
  CHECK(relatedness_error(StructureKind::Cosymplectic, ws_system(op), ws_sections(op, 10, 10), {1.0, 1.0}, 0.0, 0.5, kTight) < 1e-6);
  const ScalarField trig = trig_system({1.0, 1.0});
  const double bad = relatedness_error(StructureKind::Cosymplectic, trig, linear_section(1, 0.5), {0.5}, 0.0, 0.5, kTight);
  CHECK(bad > 1e-3);
  // The error of a non-solution grows with the span.
  CHECK(relatedness_error(StructureKind::Cosymplectic, trig, linear_section(1, 0.5), {0.5}, 0.0, 0.1, kTight) < bad);
}

TEST_CASE("contact relatedness") {
  const ScalarField H = damped_system({1.0, 0.1});
  const Section lin = linear_section(1, -0.1);  // gamma = -alpha q
  CHECK(relatedness_error(StructureKind::Contact, H, lin, {-3.0}, 0.5, 2.0, kTight) < 1e-6);
  CHECK(relatedness_error(StructureKind::Contact, H, constant_section({1.0}), {0.0}, 0.0, 2.0, kTight) > 0.1);
}

TEST_CASE("closedness") {
  const std::vector<BasePoint> pts1{{{0.3}, 0.0}, {{-2.0}, 1.0}};
  CHECK(is_closed(trig_section(1.0), pts1, 1e-10).max_defect == 0.0);
  const std::vector<BasePoint> pts2{{{0.3, 0.1}, 0.0}, {{-2.0, 5.0}, 1.0}};
  const Section sym = Section::from_values(2, [](const Vec& q, double) { return Vec{q[1], q[0]}; });
  const auto r_sym = is_closed(sym, pts2, 1e-10);
  CHECK(r_sym.closed);
  CHECK(r_sym.max_defect < 1e-10);
  const Section rot = Section::from_values(2, [](const Vec& q, double) { return Vec{q[1], -q[0]}; });
  const auto r_rot = is_closed(rot, pts2, 1e-10);
  CHECK_FALSE(r_rot.closed);
  CHECK(r_rot.max_defect == doctest::Approx(2.0));
}

TEST_CASE("gradient sections are closed") {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 20; ++k) {
    const auto W = oracle::Polynomial::random(rng, 3);
    const Section g(
        2, [W](const Vec& q, double t) { const Vec d = W.gradient({q[0], q[1], t}); return Vec{d[0], d[1]}; },
        [W](const Vec& q, double t) {
          const auto h = W.hessian({q[0], q[1], t});
          return Jacobian{{h[0][0], h[0][1]}, {h[1][0], h[1][1]}};
        },
        [W](const Vec& q, double t) {
          const auto h = W.hessian({q[0], q[1], t});
          return Vec{h[0][2], h[1][2]};
        });
    std::vector<BasePoint> pts;
    for (int i = 0; i < 10; ++i) {
      const PhasePoint x = oracle::random_point(rng, 2);
      pts.push_back({x.q, x.t});
    }
    CHECK(is_closed(g, pts, 0.0).max_defect == 0.0);
    CHECK(section_gradient_check(g, pts) < 1e-6);
  }
}

TEST_CASE("legendrian defect") {
  CHECK(to_flat(legendrian_defect(constant_section({0.0}), {0.3}, 1.0)) == Vec{0, 0, 1});
  CHECK(to_flat(legendrian_defect(constant_section({3.0}), {0.3}, 1.0)) == Vec{-3, 0, 1});
  CHECK(to_flat(legendrian_defect(constant_section({1.0, 2.0}), {0.3, 0.4}, 1.0)) == Vec{-1, -2, 0, 0, 1});
}

TEST_CASE("complete solutions") {
  std::mt19937_64 rng(33);
  const OscillatorParams op{1.0, 1.0, 0.1, 0.1};
  const CompleteSolution ws = ws_complete_solution(op);
  std::uniform_real_distribution<double> uc(8.0, 12.0), uq(0.5, 2.0);
  std::vector<PhasePoint> pts;
  for (int k = 0; k < 100; ++k) {
    const double C = uc(rng), K = uc(rng);
    const Vec q{uq(rng), uq(rng)};
    pts.push_back(ws.family({C, K}).lift(q, 0.0));
  }
  CHECK(complete_solution_consistency(ws, pts) < 1e-8);
  CHECK(involution_defect(ws, pts) < 1e-8);
  // Parameter functions written out.
  const ScalarField fC = parameter_function(ws, 0, 2), fK = parameter_function(ws, 1, 2);
  for (const auto& x : pts) {
    const double X = x.q[0], Y = x.q[1];
    CHECK(fC(x) == doctest::Approx(x.p[0] * x.p[0] + X * X + 0.2 / (X * X)));
    CHECK(fK(x) == doctest::Approx(x.p[1] * x.p[1] + Y * Y + 0.2 / (Y * Y)));
  }
  // Replacing f_K by x p_y breaks involution.
  CompleteSolution control = ws;
  control.inverse = [inv = ws.inverse](const PhasePoint& x) { return Vec{inv(x)[0], x.q[0] * x.p[1]}; };
  CHECK(involution_defect(control, pts) > 0.1);
  // One parameter: no pairs.
  const CompleteSolution trig = trig_complete_solution();
  std::vector<PhasePoint> tp{trig_section(1.0).lift({0.5}, 0.2), trig_section(2.0).lift({-1.0}, 0.3)};
  CHECK(involution_defect(trig, tp) == 0.0);
  CHECK(complete_solution_consistency(trig, tp) < 1e-8);
}

TEST_CASE("contact parameter evolution") {
  const ScalarField H = damped_system({1.0, 0.1});
  const Trajectory tr = integrate(contact_field(H), make_point({0.0}, {1.0}, 0.0), 0.0, 0.1, IntegratorConfig::rk4(1e-3));
  // f = t: dt/ds = p^2/2 - alpha S while H f_t = p^2/2 + alpha S; they agree where S = 0.
  const ParameterEvolution ft = contact_parameter_evolution(H, coordinate_field(1, 2), tr);
  CHECK(ft.defect.front() < 1e-7);
  for (std::size_t k = 0; k < tr.size(); k += 20) CHECK(std::abs(ft.defect[k] - 2 * 0.1 * std::abs(tr.x[k].t)) < 1e-7);
  CHECK(contact_parameter_evolution(H, constant_field(1, 4.0), tr).max_defect < 1e-10);
  // Without friction H is a first integral independent of t.
  const ScalarField free = damped_system({1.0, 0.0});
  const Trajectory tf = integrate(contact_field(free), make_point({0.0}, {1.0}, 0.0), 0.0, 1.0, IntegratorConfig::rk4(1e-2));
  CHECK(contact_parameter_evolution(free, free, tf).max_defect < 1e-10);
}
