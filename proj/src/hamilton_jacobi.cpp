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

#include "cohj/hamilton_jacobi.hpp"

#include <algorithm>
#include <cmath>

namespace cohj {

Section::Section(std::size_t n, GammaFn gamma, JacobianFn d_q, TimeDerivativeFn d_t) : n_(n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "section needs n >= 1");
  if (!gamma || !d_q || !d_t) throw Error(ErrorCode::InvalidArgument, "section needs gamma and both derivatives");
  impl_ = std::make_shared<const Impl>(Impl{std::move(gamma), std::move(d_q), std::move(d_t)});
}

Section Section::from_values(std::size_t n, GammaFn gamma) {
  auto d_q = [gamma, n](const Vec& q, double t) {
    Jacobian j(n, Vec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      const double h = fd_step(q[i]);
      Vec qp = q, qm = q;
      qp[i] += h;
      qm[i] -= h;
      const Vec gp = gamma(qp, t), gm = gamma(qm, t);
      for (std::size_t r = 0; r < n; ++r) j[r][i] = (gp[r] - gm[r]) / (qp[i] - qm[i]);
    }
    return j;
  };
  auto d_t = [gamma, n](const Vec& q, double t) {
    const double h = fd_step(t);
    const Vec gp = gamma(q, t + h), gm = gamma(q, t - h);
    Vec d(n);
    for (std::size_t r = 0; r < n; ++r) d[r] = (gp[r] - gm[r]) / (2 * h);
    return d;
  };
  return Section(n, gamma, d_q, d_t);
}

namespace {

void require_base(std::size_t n, const Vec& q) {
  if (q.size() != n) throw Error(ErrorCode::InvalidArgument, "base point dimension does not match section");
}

}  // namespace

Vec Section::operator()(const Vec& q, double t) const {
  require_base(n_, q);
  return impl_->gamma(q, t);
}

Jacobian Section::d_q(const Vec& q, double t) const {
  require_base(n_, q);
  return impl_->d_q(q, t);
}

Vec Section::d_t(const Vec& q, double t) const {
  require_base(n_, q);
  return impl_->d_t(q, t);
}

PhasePoint Section::lift(const Vec& q, double t) const { return PhasePoint{q, (*this)(q, t), t}; }

double section_gradient_check(const Section& g, std::span<const BasePoint> points) {
  const Section numeric = Section::from_values(g.dim(), [&g](const Vec& q, double t) { return g(q, t); });
  double worst = 0.0;
  auto rel = [](double a, double d) { return std::abs(a - d) / std::max(1.0, std::abs(a)); };
  for (const auto& b : points) {
    const Jacobian ja = g.d_q(b.q, b.t), jd = numeric.d_q(b.q, b.t);
    const Vec ta = g.d_t(b.q, b.t), td = numeric.d_t(b.q, b.t);
    for (std::size_t j = 0; j < g.dim(); ++j) {
      worst = std::max(worst, rel(ta[j], td[j]));
      for (std::size_t i = 0; i < g.dim(); ++i) worst = std::max(worst, rel(ja[j][i], jd[j][i]));
    }
  }
  return worst;
}

BaseVector project_field_cosymplectic(const ScalarField& H, const Section& g, const Vec& q, double t) {
  const Gradient d = H.gradient(g.lift(q, t));
  return {d.dp, 1.0};
}

BaseVector project_field_contact(const ScalarField& H, const Section& g, const Vec& q, double t) {
  const PhasePoint x = g.lift(q, t);
  const Gradient d = H.gradient(x);
  double dt = -H(x);
  for (std::size_t i = 0; i < x.dim(); ++i) dt += x.p[i] * d.dp[i];
  return {d.dp, dt};
}

Vec hj_residual_cosymplectic(const ScalarField& H, const Section& g, const Vec& q, double t) {
  const std::size_t n = g.dim();
  const Gradient d = H.gradient(g.lift(q, t));
  const Jacobian j = g.d_q(q, t);
  Vec r = g.d_t(q, t);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) r[a] += d.dp[i] * j[a][i];
    r[a] += d.dq[a];
  }
  return r;
}

double hj_residual_trig_as_printed(double alpha, double w, const Section& g, double q, double t) {
  if (g.dim() != 1) throw Error(ErrorCode::InvalidArgument, "the trigonometric system is one-dimensional");
  const Vec qv{q};
  const double p = g(qv, t)[0];
  const double s = alpha * std::sin(w * t);
  return g.d_t(qv, t)[0] + (p + s * q * q * p) * g.d_q(qv, t)[0][0] - (q + s * p * p * q);
}

Vec hj_residual_contact(const ScalarField& H, const Section& g, const Vec& q, double t) {
  const std::size_t n = g.dim();
  const PhasePoint x = g.lift(q, t);
  const Gradient d = H.gradient(x);
  const Jacobian j = g.d_q(q, t);
  const Vec gt = g.d_t(q, t);
  double reeb_rate = -H(x);
  for (std::size_t i = 0; i < n; ++i) reeb_rate += x.p[i] * d.dp[i];
  Vec r(n);
  for (std::size_t a = 0; a < n; ++a) {
    r[a] = x.p[a] * d.dt + d.dq[a] + reeb_rate * gt[a];
    for (std::size_t i = 0; i < n; ++i) r[a] += d.dp[i] * j[a][i];
  }
  return r;
}

double relatedness_error(StructureKind kind, const ScalarField& H, const Section& g, const Vec& q0, double t0,
                         double span, const IntegratorConfig& cfg) {
  if (kind != StructureKind::Cosymplectic && kind != StructureKind::Contact)
    throw Error(ErrorCode::UnsupportedStructure, "relatedness is defined for cosymplectic and contact structures");
  const std::size_t n = g.dim();
  if (H.dim() != n) throw Error(ErrorCode::InvalidArgument, "Hamiltonian and section dimensions differ");
  const bool contact = kind == StructureKind::Contact;
  // Combined state: full (q, p, t) followed by projected (q, t).
  const std::size_t full = 2 * n + 1;
  OdeRhs rhs = [&](const Vec& y) {
    const PhasePoint x = point_from_flat(Vec(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(full)), n);
    const Vec qb(y.begin() + static_cast<std::ptrdiff_t>(full), y.begin() + static_cast<std::ptrdiff_t>(full + n));
    const double tb = y[full + n];
    Vec out = to_flat(contact ? evolution_field_contact(H, x) : evolution_field_cosymplectic(H, x));
    const BaseVector b = contact ? project_field_contact(H, g, qb, tb) : project_field_cosymplectic(H, g, qb, tb);
    out.insert(out.end(), b.dq.begin(), b.dq.end());
    out.push_back(b.dt);
    return out;
  };
  Vec y0 = to_flat(g.lift(q0, t0));
  y0.insert(y0.end(), q0.begin(), q0.end());
  y0.push_back(t0);
  const OdeSolution sol = solve_ode(rhs, y0, 0.0, span, cfg);
  double worst = 0.0;
  for (const auto& y : sol.y) {
    const Vec qb(y.begin() + static_cast<std::ptrdiff_t>(full), y.begin() + static_cast<std::ptrdiff_t>(full + n));
    const Vec lifted = g(qb, y[full + n]);
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(y[n + i] - lifted[i]));
  }
  return worst;
}

ClosednessReport is_closed(const Section& g, std::span<const BasePoint> points, double tol) {
  ClosednessReport report;
  for (const auto& b : points) {
    const Jacobian j = g.d_q(b.q, b.t);
    for (std::size_t a = 0; a < g.dim(); ++a)
      for (std::size_t i = a + 1; i < g.dim(); ++i)
        report.max_defect = std::max(report.max_defect, std::abs(j[a][i] - j[i][a]));
  }
  report.closed = report.max_defect <= tol;
  return report;
}

OneForm legendrian_defect(const Section& g, const Vec& q, double t) {
  OneForm out = zero_form(g.dim());
  const Vec gamma = g(q, t);
  for (std::size_t i = 0; i < g.dim(); ++i) out.aq[i] = -gamma[i];
  out.at = 1.0;
  return out;
}

double complete_solution_consistency(const CompleteSolution& cs, std::span<const PhasePoint> points) {
  if (!cs.inverse) throw Error(ErrorCode::InvalidArgument, "complete solution has no inverse map");
  double worst = 0.0;
  for (const auto& x : points) {
    const Vec p = cs.family(cs.inverse(x))(x.q, x.t);
    for (std::size_t i = 0; i < p.size(); ++i) worst = std::max(worst, std::abs(p[i] - x.p[i]));
  }
  return worst;
}

ScalarField parameter_function(const CompleteSolution& cs, std::size_t i, std::size_t n) {
  if (!cs.inverse) throw Error(ErrorCode::InvalidArgument, "complete solution has no inverse map");
  if (i >= cs.k) throw Error(ErrorCode::InvalidArgument, "parameter index out of range");
  ScalarField::ValueFn value = [inv = cs.inverse, i](const PhasePoint& x) { return inv(x)[i]; };
  ScalarField::GradientFn grad = [value](const PhasePoint& x) { return fd_gradient(value, x, 1e-6); };
  return ScalarField(n, value, grad);
}

double involution_defect(const CompleteSolution& cs, std::span<const PhasePoint> points) {
  if (cs.k < 2 || points.empty()) return 0.0;
  const std::size_t n = points.front().dim();
  const GeometricStructure poisson = GeometricStructure::cosymplectic(n);
  std::vector<ScalarField> f;
  for (std::size_t i = 0; i < cs.k; ++i) f.push_back(parameter_function(cs, i, n));
  double worst = 0.0;
  for (const auto& x : points)
    for (std::size_t i = 0; i < cs.k; ++i)
      for (std::size_t j = i + 1; j < cs.k; ++j) worst = std::max(worst, std::abs(bracket(poisson, f[i], f[j], x)));
  return worst;
}

ParameterEvolution contact_parameter_evolution(const ScalarField& H, const ScalarField& f, const Trajectory& traj) {
  ParameterEvolution out;
  const std::size_t m = traj.size();
  out.defect.assign(m, 0.0);
  if (m < 2) return out;
  Vec values(m);
  for (std::size_t k = 0; k < m; ++k) values[k] = f(traj.x[k]);
  for (std::size_t k = 0; k < m; ++k) {
    double slope;
    if (m == 2) {
      slope = (values[1] - values[0]) / (traj.s[1] - traj.s[0]);
    } else {
      // Derivative of the quadratic through three neighbouring samples
      // (centered inside, one-sided at the ends).
      const std::size_t i0 = k == 0 ? 0 : (k + 1 == m ? m - 3 : k - 1);
      const std::size_t i1 = i0 + 1, i2 = i0 + 2;
      const double s0 = traj.s[i0], s1 = traj.s[i1], s2 = traj.s[i2], s = traj.s[k];
      const double l0 = ((s - s1) + (s - s2)) / ((s0 - s1) * (s0 - s2));
      const double l1 = ((s - s0) + (s - s2)) / ((s1 - s0) * (s1 - s2));
      const double l2 = ((s - s0) + (s - s1)) / ((s2 - s0) * (s2 - s1));
      slope = l0 * values[i0] + l1 * values[i1] + l2 * values[i2];
    }
    const double expected = H(traj.x[k]) * f.gradient(traj.x[k]).dt;
    out.defect[k] = std::abs(slope - expected);
    out.max_defect = std::max(out.max_defect, out.defect[k]);
  }
  return out;
}

}  // namespace cohj
