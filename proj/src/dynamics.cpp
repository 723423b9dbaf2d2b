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

#include "cohj/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace cohj {

void validate(const IntegratorConfig& cfg) {
  if (cfg.max_steps < 1) throw Error(ErrorCode::InvalidArgument, "max_steps must be >= 1");
  if (cfg.method == IntegratorMethod::RK4) {
    if (!(cfg.step > 0.0)) throw Error(ErrorCode::InvalidArgument, "RK4 step must be positive");
  } else if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "RK45 tolerances must be positive");
  }
}

namespace {

Vec evaluate(const OdeRhs& rhs, const Vec& y) {
  if (!all_finite(y)) throw Error(ErrorCode::NonFiniteState, "state became non-finite");
  Vec f;
  try {
    f = rhs(y);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DomainError || e.code() == ErrorCode::SingularityError)
      throw Error(ErrorCode::NonFiniteState, std::string("trajectory left the domain: ") + e.what());
    throw;
  }
  if (f.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "right-hand side has wrong dimension");
  if (!all_finite(f)) throw Error(ErrorCode::NonFiniteState, "vector field evaluated to a non-finite value");
  return f;
}

// y + h * sum_i c_i k_i
Vec combine(const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
  Vec out = y;
  for (const auto& [c, k] : terms) {
    if (c == 0.0) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * c * (*k)[i];
  }
  return out;
}

OdeSolution solve_rk4(const OdeRhs& rhs, const Vec& y0, double s0, double s1, const IntegratorConfig& cfg) {
  const double span = s1 - s0;
  const double count = std::ceil(span / cfg.step - 1e-9);
  if (count > static_cast<double>(cfg.max_steps))
    throw Error(ErrorCode::StepLimitExceeded, "RK4 step count exceeds max_steps");
  const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(count));
  const double h = span / static_cast<double>(steps);

  OdeSolution sol;
  sol.s.reserve(steps + 1);
  sol.y.reserve(steps + 1);
  sol.s.push_back(s0);
  sol.y.push_back(y0);
  Vec y = y0;
  for (std::size_t k = 0; k < steps; ++k) {
    const Vec k1 = evaluate(rhs, y);
    const Vec k2 = evaluate(rhs, combine(y, h, {{0.5, &k1}}));
    const Vec k3 = evaluate(rhs, combine(y, h, {{0.5, &k2}}));
    const Vec k4 = evaluate(rhs, combine(y, h, {{1.0, &k3}}));
    y = combine(y, h, {{1.0 / 6, &k1}, {1.0 / 3, &k2}, {1.0 / 3, &k3}, {1.0 / 6, &k4}});
    if (!all_finite(y)) throw Error(ErrorCode::NonFiniteState, "state became non-finite");
    sol.s.push_back(k + 1 == steps ? s1 : s0 + static_cast<double>(k + 1) * h);
    sol.y.push_back(y);
  }
  return sol;
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

double error_norm(const Vec& err, const Vec& y, const Vec& ynew, const IntegratorConfig& cfg) {
  double acc = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
    acc += (err[i] / sc) * (err[i] / sc);
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

double initial_step(const OdeRhs& rhs, const Vec& y0, const Vec& f0, double span, const IntegratorConfig& cfg) {
  double d0 = 0.0, d1 = 0.0;
  for (std::size_t i = 0; i < y0.size(); ++i) {
    const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y0[i]);
    d0 += (y0[i] / sc) * (y0[i] / sc);
    d1 += (f0[i] / sc) * (f0[i] / sc);
  }
  d0 = std::sqrt(d0 / static_cast<double>(y0.size()));
  d1 = std::sqrt(d1 / static_cast<double>(y0.size()));
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  const Vec y1 = combine(y0, h0, {{1.0, &f0}});
  const Vec f1 = evaluate(rhs, y1);
  double d2 = 0.0;
  for (std::size_t i = 0; i < y0.size(); ++i) {
    const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y0[i]);
    d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
  }
  d2 = std::sqrt(d2 / static_cast<double>(y0.size())) / h0;
  const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / std::max(d1, d2), 0.2);
  return std::min({100 * h0, h1, span});
}

OdeSolution solve_rk45(const OdeRhs& rhs, const Vec& y0, double s0, double s1, const IntegratorConfig& cfg) {
  OdeSolution sol;
  sol.s.push_back(s0);
  sol.y.push_back(y0);
  Vec y = y0;
  double s = s0;
  Vec k1 = evaluate(rhs, y);
  double h = initial_step(rhs, y, k1, s1 - s0, cfg);
  std::size_t attempts = 0;
  bool rejected_last = false;
  while (s < s1) {
    if (++attempts > cfg.max_steps) throw Error(ErrorCode::StepLimitExceeded, "RK45 exceeded max_steps");
    bool last = false;
    if (s + h >= s1 || (s1 - (s + h)) < 1e-12 * std::abs(s1 - s0)) {
      h = s1 - s;
      last = true;
    }
    const Vec k2 = evaluate(rhs, combine(y, h, {{a21, &k1}}));
    const Vec k3 = evaluate(rhs, combine(y, h, {{a31, &k1}, {a32, &k2}}));
    const Vec k4 = evaluate(rhs, combine(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec k5 = evaluate(rhs, combine(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec k6 = evaluate(rhs, combine(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const Vec ynew = combine(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const Vec k7 = evaluate(rhs, ynew);
    Vec err(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double en = error_norm(err, y, ynew, cfg);
    if (en <= 1.0) {
      s = last ? s1 : s + h;
      y = ynew;
      k1 = k7;  // first-same-as-last
      sol.s.push_back(s);
      sol.y.push_back(y);
      double factor = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      if (rejected_last) factor = std::min(factor, 1.0);
      h *= factor;
      rejected_last = false;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
      rejected_last = true;
    }
    if (!(h > 0.0) || s + h == s) {
      if (s < s1) throw Error(ErrorCode::NonFiniteState, "step size underflow");
    }
  }
  return sol;
}

}  // namespace

OdeSolution solve_ode(const OdeRhs& rhs, const Vec& y0, double s0, double s1, const IntegratorConfig& cfg) {
  validate(cfg);
  if (!(s1 > s0)) throw Error(ErrorCode::InvalidArgument, "empty span");
  if (!all_finite(y0)) throw Error(ErrorCode::NonFiniteState, "initial state is not finite");
  return cfg.method == IntegratorMethod::RK4 ? solve_rk4(rhs, y0, s0, s1, cfg) : solve_rk45(rhs, y0, s0, s1, cfg);
}

TangentVector evolution_field_cosymplectic(const ScalarField& H, const PhasePoint& x) {
  if (x.dim() != H.dim()) throw Error(ErrorCode::InvalidArgument, "field and point dimensions differ");
  const Gradient g = H.gradient(x);
  TangentVector v = zero_vector(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    v.dq[i] = g.dp[i];
    v.dp[i] = -g.dq[i];
  }
  v.dt = 1.0;
  return v;
}

TangentVector evolution_field_contact(const ScalarField& H, const PhasePoint& x) {
  if (x.dim() != H.dim()) throw Error(ErrorCode::InvalidArgument, "field and point dimensions differ");
  const Gradient g = H.gradient(x);
  const double h = H(x);
  TangentVector v = zero_vector(x.dim());
  double pdh = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    v.dq[i] = g.dp[i];
    v.dp[i] = -(x.p[i] * g.dt + g.dq[i]);
    pdh += x.p[i] * g.dp[i];
  }
  v.dt = pdh - h;
  return v;
}

VectorField cosymplectic_field(ScalarField H) {
  return [H = std::move(H)](const PhasePoint& x) { return evolution_field_cosymplectic(H, x); };
}

VectorField contact_field(ScalarField H) {
  return [H = std::move(H)](const PhasePoint& x) { return evolution_field_contact(H, x); };
}

Trajectory integrate(const VectorField& field, const PhasePoint& x0, double s0, double s1,
                     const IntegratorConfig& cfg, const ScalarField* channel) {
  validate(x0);
  const std::size_t n = x0.dim();
  OdeRhs rhs = [&field, n](const Vec& y) { return to_flat(field(point_from_flat(y, n))); };
  const OdeSolution sol = solve_ode(rhs, to_flat(x0), s0, s1, cfg);
  Trajectory traj;
  traj.s = sol.s;
  traj.x.reserve(sol.y.size());
  for (const auto& y : sol.y) traj.x.push_back(point_from_flat(y, n));
  if (channel) {
    traj.channel.reserve(traj.x.size());
    for (const auto& x : traj.x) traj.channel.push_back((*channel)(x));
  }
  return traj;
}

DriftReport hamiltonian_drift(const ScalarField& H, const Trajectory& traj, DriftMode mode) {
  DriftReport report;
  if (traj.empty()) return report;
  const double h0 = H(traj.x.front());
  double integral = 0.0;  // int H_t ds, trapezoidal
  double prev_ht = mode == DriftMode::Dissipation ? H.gradient(traj.x.front()).dt : 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    double expected = h0;
    if (mode == DriftMode::Dissipation && k > 0) {
      const double ht = H.gradient(traj.x[k]).dt;
      integral += 0.5 * (ht + prev_ht) * (traj.s[k] - traj.s[k - 1]);
      prev_ht = ht;
      expected = h0 * std::exp(-integral);
    }
    const double dev = std::abs(H(traj.x[k]) - expected);
    report.max_abs = std::max(report.max_abs, dev);
    report.max_rel = std::max(report.max_rel, dev / std::max(std::abs(expected), 1e-300));
  }
  return report;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const ScalarField& H) {
  const std::size_t n = H.dim();
  out << "s,t";
  for (std::size_t i = 1; i <= n; ++i) out << ",q" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",p" << i;
  out << ",H\n";
  char buf[32];
  auto emit = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const PhasePoint& x = traj.x[k];
    emit(traj.s[k]);
    out << ',';
    emit(x.t);
    for (double v : x.q) { out << ','; emit(v); }
    for (double v : x.p) { out << ','; emit(v); }
    out << ',';
    emit(k < traj.channel.size() ? traj.channel[k] : H(x));
    out << '\n';
  }
}

}  // namespace cohj
