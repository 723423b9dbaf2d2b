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

#include "cohj/systems.hpp"

#include <cmath>
#include <limits>

namespace cohj {

namespace {

constexpr double kPoleGuard = 1e-3;
constexpr double kOriginGuard = 1e-6;
constexpr double kSqrtFloor = 1e-12;

void require_mass(double m) {
  if (!(m > 0.0)) throw Error(ErrorCode::InvalidArgument, "mass must be positive");
}

// Inverse-square guard: only active when the coefficient is nonzero.
void guard_origin(double coord, double coeff, const char* name) {
  if (coeff != 0.0 && std::abs(coord) < kOriginGuard)
    throw Error(ErrorCode::DomainError, std::string("potential is singular at ") + name + " = 0");
}

double checked_sqrt(double arg) {
  if (arg < 0.0) throw Error(ErrorCode::DomainError, "section evaluated outside its square-root domain");
  return std::sqrt(arg);
}

void require_sqrt_interior(double arg) {
  if (arg < kSqrtFloor) throw Error(ErrorCode::DomainError, "section derivative undefined at the square-root boundary");
}

}  // namespace

ScalarField trig_system(const TrigParams& pr) {
  auto value = [pr](const PhasePoint& x) {
    const double q = x.q[0], p = x.p[0];
    return 0.5 * p * p + 0.5 * q * q + pr.alpha * std::sin(pr.w * x.t) * q * q * p * p / 2;
  };
  auto grad = [pr](const PhasePoint& x) {
    const double q = x.q[0], p = x.p[0];
    const double s = pr.alpha * std::sin(pr.w * x.t);
    return Gradient{{q + s * q * p * p}, {p + s * q * q * p}, pr.alpha * pr.w * std::cos(pr.w * x.t) * q * q * p * p / 2};
  };
  return ScalarField(1, value, grad);
}

Section trig_section(double C) {
  auto guard = [C](double t) {
    if (std::abs(t + C) < kPoleGuard) throw Error(ErrorCode::SingularityError, "q/tanh(t+C) is singular at t + C = 0");
  };
  return Section(
      1,
      [C, guard](const Vec& q, double t) {
        guard(t);
        return Vec{q[0] / std::tanh(t + C)};
      },
      [C, guard](const Vec&, double t) {
        guard(t);
        return Jacobian{{1.0 / std::tanh(t + C)}};
      },
      [C, guard](const Vec& q, double t) {
        guard(t);
        const double sh = std::sinh(t + C);
        return Vec{-q[0] / (sh * sh)};
      });
}

Section cot_section(double C) {
  auto guard = [C](double t) {
    if (std::abs(std::sin(t + C)) < std::sin(kPoleGuard))
      throw Error(ErrorCode::SingularityError, "q cot(t+C) is singular near a pole of cot");
  };
  return Section(
      1,
      [C, guard](const Vec& q, double t) {
        guard(t);
        return Vec{q[0] / std::tan(t + C)};
      },
      [C, guard](const Vec&, double t) {
        guard(t);
        return Jacobian{{1.0 / std::tan(t + C)}};
      },
      [C, guard](const Vec& q, double t) {
        guard(t);
        const double s = std::sin(t + C);
        return Vec{-q[0] / (s * s)};
      });
}

Section linear_section(std::size_t n, double a) {
  return Section(
      n,
      [a](const Vec& q, double) {
        Vec g(q);
        for (double& c : g) c *= a;
        return g;
      },
      [a, n](const Vec&, double) {
        Jacobian j(n, Vec(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) j[i][i] = a;
        return j;
      },
      [n](const Vec&, double) { return Vec(n, 0.0); });
}

ScalarField ws_system(const OscillatorParams& pr) {
  require_mass(pr.m);
  auto value = [pr](const PhasePoint& s) {
    const double x = s.q[0], y = s.q[1];
    guard_origin(x, pr.k2, "x");
    guard_origin(y, pr.k3, "y");
    double v = 0.5 * pr.omega0 * pr.omega0 * (x * x + y * y);
    if (pr.k2 != 0.0) v += pr.k2 / (x * x);
    if (pr.k3 != 0.0) v += pr.k3 / (y * y);
    return (s.p[0] * s.p[0] + s.p[1] * s.p[1]) / (2 * pr.m) + v;
  };
  auto grad = [pr](const PhasePoint& s) {
    const double x = s.q[0], y = s.q[1];
    guard_origin(x, pr.k2, "x");
    guard_origin(y, pr.k3, "y");
    const double w2 = pr.omega0 * pr.omega0;
    double hx = w2 * x, hy = w2 * y;
    if (pr.k2 != 0.0) hx -= 2 * pr.k2 / (x * x * x);
    if (pr.k3 != 0.0) hy -= 2 * pr.k3 / (y * y * y);
    return Gradient{{hx, hy}, {s.p[0] / pr.m, s.p[1] / pr.m}, 0.0};
  };
  return ScalarField(2, value, grad);
}

ScalarField anis_system(const OscillatorParams& pr) {
  require_mass(pr.m);
  auto value = [pr](const PhasePoint& s) {
    const double x = s.q[0], y = s.q[1];
    guard_origin(y, pr.k3, "y");
    double v = 0.5 * pr.omega0 * pr.omega0 * (4 * x * x + y * y) + pr.k2 * x;
    if (pr.k3 != 0.0) v += pr.k3 / (y * y);
    return (s.p[0] * s.p[0] + s.p[1] * s.p[1]) / (2 * pr.m) + v;
  };
  auto grad = [pr](const PhasePoint& s) {
    const double x = s.q[0], y = s.q[1];
    guard_origin(y, pr.k3, "y");
    const double w2 = pr.omega0 * pr.omega0;
    double hy = w2 * y;
    if (pr.k3 != 0.0) hy -= 2 * pr.k3 / (y * y * y);
    return Gradient{{4 * w2 * x + pr.k2, hy}, {s.p[0] / pr.m, s.p[1] / pr.m}, 0.0};
  };
  return ScalarField(2, value, grad);
}

namespace {

// Square-root section of an isotropic 1-d factor:
// gamma^2 = m(-omega^2 u^2 - 2k/u^2) + c.
struct IsotropicFactor {
  double m, omega, k, c;

  double arg(double u) const {
    guard_origin(u, k, "the section coordinate");
    double a = -omega * omega * u * u;
    if (k != 0.0) a -= 2 * k / (u * u);
    return m * a + c;
  }
  double value(double u) const { return checked_sqrt(arg(u)); }
  double derivative(double u) const {
    const double a = arg(u);
    require_sqrt_interior(a);
    double num = -omega * omega * u;
    if (k != 0.0) num += 2 * k / (u * u * u);
    return m * num / std::sqrt(a);
  }
  double parameter(double u, double p) const { return p * p - (arg(u) - c); }
};

// gamma = m sqrt(c - (4 omega^2 u^2 + 2 k u)/m).
struct LinearFactor {
  double m, omega, k, c;

  double arg(double u) const { return c - (4 * omega * omega * u * u + 2 * k * u) / m; }
  double value(double u) const { return m * checked_sqrt(arg(u)); }
  double derivative(double u) const {
    const double a = arg(u);
    require_sqrt_interior(a);
    return -(4 * omega * omega * u + k) / std::sqrt(a);
  }
  double parameter(double u, double p) const { return (p / m) * (p / m) + (4 * omega * omega * u * u + 2 * k * u) / m; }
};

template <class FX, class FY>
Section separable_section(FX fx, FY fy) {
  return Section(
      2, [fx, fy](const Vec& q, double) { return Vec{fx.value(q[0]), fy.value(q[1])}; },
      [fx, fy](const Vec& q, double) { return Jacobian{{fx.derivative(q[0]), 0.0}, {0.0, fy.derivative(q[1])}}; },
      [](const Vec&, double) { return Vec{0.0, 0.0}; });
}

}  // namespace

Section ws_sections(const OscillatorParams& pr, double C, double K) {
  require_mass(pr.m);
  return separable_section(IsotropicFactor{pr.m, pr.omega0, pr.k2, C}, IsotropicFactor{pr.m, pr.omega0, pr.k3, K});
}

Section anis_sections(const OscillatorParams& pr, double C, double K) {
  require_mass(pr.m);
  return separable_section(LinearFactor{pr.m, pr.omega0, pr.k2, C}, IsotropicFactor{pr.m, pr.omega0, pr.k3, K});
}

CompleteSolution ws_complete_solution(const OscillatorParams& pr) {
  CompleteSolution cs;
  cs.k = 2;
  cs.family = [pr](const Vec& lambda) { return ws_sections(pr, lambda.at(0), lambda.at(1)); };
  cs.inverse = [pr](const PhasePoint& x) {
    const IsotropicFactor fx{pr.m, pr.omega0, pr.k2, 0.0}, fy{pr.m, pr.omega0, pr.k3, 0.0};
    return Vec{fx.parameter(x.q[0], x.p[0]), fy.parameter(x.q[1], x.p[1])};
  };
  return cs;
}

CompleteSolution anis_complete_solution(const OscillatorParams& pr) {
  CompleteSolution cs;
  cs.k = 2;
  cs.family = [pr](const Vec& lambda) { return anis_sections(pr, lambda.at(0), lambda.at(1)); };
  cs.inverse = [pr](const PhasePoint& x) {
    const LinearFactor fx{pr.m, pr.omega0, pr.k2, 0.0};
    const IsotropicFactor fy{pr.m, pr.omega0, pr.k3, 0.0};
    return Vec{fx.parameter(x.q[0], x.p[0]), fy.parameter(x.q[1], x.p[1])};
  };
  return cs;
}

CompleteSolution trig_complete_solution() {
  CompleteSolution cs;
  cs.k = 1;
  cs.family = [](const Vec& lambda) { return trig_section(lambda.at(0)); };
  cs.inverse = [](const PhasePoint& x) {
    const double r = x.q[0] / x.p[0];
    if (!(std::abs(r) < 1.0)) throw Error(ErrorCode::DomainError, "point is not on the q/tanh(t+C) family");
    return Vec{std::atanh(r) - x.t};
  };
  return cs;
}

ScalarField damped_system(const DampedParams& pr) {
  require_mass(pr.m);
  auto value = [pr](const PhasePoint& x) { return x.p[0] * x.p[0] / (2 * pr.m) + pr.alpha * x.t; };
  auto grad = [pr](const PhasePoint& x) { return Gradient{{0.0}, {x.p[0] / pr.m}, pr.alpha}; };
  auto hess = [pr](const PhasePoint&) {
    Hessian h(3, Vec(3, 0.0));
    h[1][1] = 1.0 / pr.m;
    return h;
  };
  return ScalarField(1, value, grad, hess);
}

DampedSolution::DampedSolution(const DampedParams& params, double S, double C, DampedSectionOptions options)
    : params_(params), S_(S), C_(C), options_(options) {
  require_mass(params.m);
  if (params.m != 1.0)
    throw Error(ErrorCode::DomainError, "the implicit damped-oscillator solution is only consistent for m = 1");
  if (!(options.gamma_lo > 0.0) || !(options.gamma_hi > options.gamma_lo) || !(options.tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "invalid root-finding bracket or tolerance");
  c1_ = params.alpha * params.m;
  c2_ = -params.m * params.m * params.alpha * S;
  const double disc = c1_ * c1_ - 2 * c2_;
  if (c1_ != 0.0 && disc == 0.0)
    throw Error(ErrorCode::DomainError, "degenerate discriminant c1^2 = 2 c2 has no implicit solution formula");
  branch_ = (c1_ == 0.0 || disc > 0.0) ? DampedBranch::Logarithmic : DampedBranch::Arctangent;
}

double DampedSolution::q_of_gamma(double g) const {
  if (g == 0.0) throw Error(ErrorCode::DomainError, "the reduced equation is singular at gamma = 0");
  const double quad = 0.5 * g * g + c1_ * g + c2_;
  double first = 0.0;
  if (c1_ != 0.0) {
    const double disc = c1_ * c1_ - 2 * c2_;
    if (branch_ == DampedBranch::Logarithmic) {
      const double d = std::sqrt(disc);
      first = c1_ / d * std::log(std::abs((g + c1_ - d) / (g + c1_ + d)));
    } else {
      const double e = std::sqrt(-disc);
      const double coeff = options_.arctan_form == ArctanForm::Integrated ? 2 * c1_ / e : 2 / e;
      first = coeff * std::atan((g + c1_) / e);
    }
  }
  return first - std::log(std::abs(quad)) + C_;
}

double DampedSolution::slope(double g) const {
  if (g == 0.0) throw Error(ErrorCode::DomainError, "the reduced equation is singular at gamma = 0");
  return -g / 2 - c1_ - c2_ / g;
}

std::pair<double, double> DampedSolution::branch_interval() const {
  double lo = options_.gamma_lo;
  const double hi = options_.gamma_hi;
  const double disc = c1_ * c1_ - 2 * c2_;
  if (disc >= 0.0) {
    // Roots of gamma^2/2 + c1 gamma + c2 are singular points of the relation.
    const double d = std::sqrt(disc);
    for (double r : {-c1_ - d, -c1_ + d})
      if (r > 0.0 && r < hi) lo = std::max(lo, r * (1.0 + 1e-12) + std::numeric_limits<double>::min());
  }
  if (!(lo < hi)) throw Error(ErrorCode::RootFindFailure, "no regular branch inside the gamma bracket");
  return {lo, hi};
}

double DampedSolution::gamma(double q) const {
  auto [a, b] = branch_interval();
  double fa = q_of_gamma(a) - q;
  const double fb = q_of_gamma(b) - q;
  if (!std::isfinite(fa) || !std::isfinite(fb) || (fa > 0) == (fb > 0)) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    throw Error(ErrorCode::RootFindFailure, "implicit relation has no sign change on the gamma bracket");
  }
  for (int it = 0; it < 400 && b - a > options_.tol; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = q_of_gamma(mid) - q;
    if (fm == 0.0) return mid;
    if ((fm > 0) == (fa > 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

Section DampedSolution::section() const {
  const DampedSolution self = *this;
  return Section(
      1, [self](const Vec& q, double) { return Vec{self.gamma(q[0])}; },
      [self](const Vec& q, double) { return Jacobian{{self.slope(self.gamma(q[0]))}}; },
      [](const Vec&, double) { return Vec{1.0}; });
}

bool is_known_system(const std::string& id) noexcept {
  return id == "trig" || id == "ws" || id == "anis" || id == "damped";
}

}  // namespace cohj
