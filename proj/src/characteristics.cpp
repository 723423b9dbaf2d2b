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

#include "cohj/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <ostream>

namespace cohj {

const char* mode_name(ResidualMode mode) noexcept {
  return mode == ResidualMode::Theorem ? "theorem" : "as-printed";
}

ResidualMode parse_mode(const std::string& name) {
  if (name == "theorem") return ResidualMode::Theorem;
  if (name == "as-printed") return ResidualMode::AsPrinted;
  throw Error(ErrorCode::ConfigError, "unknown residual mode '" + name + "' (expected theorem|as-printed)");
}

CharacteristicSolution::CharacteristicSolution(Vec times, std::vector<CharacteristicCurve> curves)
    : times_(std::move(times)), curves_(std::move(curves)) {
  if (times_.empty() || curves_.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "characteristic solution needs output times and at least two curves");
}

std::pair<double, double> CharacteristicSolution::q_range(std::size_t k) const {
  double lo = curves_.front().q[k], hi = lo;
  for (const auto& c : curves_) {
    lo = std::min(lo, c.q[k]);
    hi = std::max(hi, c.q[k]);
  }
  return {lo, hi};
}

double CharacteristicSolution::slice_value(std::size_t k, double q) const {
  // Curves are ordered by label; positions at slice k are strictly monotone.
  const bool increasing = curves_.back().q[k] > curves_.front().q[k];
  const auto [lo, hi] = q_range(k);
  // Accept queries that miss the hull by rounding only.
  const double slack = 4 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(lo), std::abs(hi)});
  if (q < lo - slack || q > hi + slack)
    throw Error(ErrorCode::DomainError, "query outside the hull of the characteristic curves");
  q = std::clamp(q, lo, hi);
  std::size_t a = 0, b = curves_.size() - 1;
  while (b - a > 1) {
    const std::size_t mid = (a + b) / 2;
    const bool right = increasing ? curves_[mid].q[k] <= q : curves_[mid].q[k] >= q;
    (right ? a : b) = mid;
  }
  const double qa = curves_[a].q[k], qb = curves_[b].q[k];
  const double w = (q - qa) / (qb - qa);
  return (1.0 - w) * curves_[a].gamma[k] + w * curves_[b].gamma[k];
}

double CharacteristicSolution::gamma(double q, double t) const {
  const double tol = 1e-12 * std::max(1.0, std::abs(t));
  for (std::size_t k = 0; k < times_.size(); ++k)
    if (std::abs(times_[k] - t) <= tol) return slice_value(k, q);
  if (t < times_.front() || t > times_.back())
    throw Error(ErrorCode::DomainError, "query time outside the solved span");
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t k1 = static_cast<std::size_t>(it - times_.begin());
  const std::size_t k0 = k1 - 1;
  const double w = (t - times_[k0]) / (times_[k1] - times_[k0]);
  return (1.0 - w) * slice_value(k0, q) + w * slice_value(k1, q);
}

void CharacteristicSolution::write_csv(std::ostream& out) const {
  out << "label,t,q,gamma\n";
  char buf[128];
  for (const auto& c : curves_)
    for (std::size_t k = 0; k < times_.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", c.label, times_[k], c.q[k], c.gamma[k]);
      out << buf;
    }
}

namespace {

CharacteristicCurve integrate_curve(const ScalarField& H, double label, double gamma0, const Vec& times,
                                    const IntegratorConfig& cfg, double sign) {
  // State (q, gamma, t); t advances at unit rate.
  OdeRhs rhs = [&H, sign](const Vec& y) {
    const Gradient d = H.gradient(PhasePoint{{y[0]}, {y[1]}, y[2]});
    return Vec{d.dp[0], sign * d.dq[0], 1.0};
  };
  CharacteristicCurve c;
  c.label = label;
  c.q.push_back(label);
  c.gamma.push_back(gamma0);
  Vec y{label, gamma0, times.front()};
  for (std::size_t k = 1; k < times.size(); ++k) {
    const OdeSolution sol = solve_ode(rhs, y, times[k - 1], times[k], cfg);
    y = sol.y.back();
    y[2] = times[k];
    c.q.push_back(y[0]);
    c.gamma.push_back(y[1]);
  }
  return c;
}

}  // namespace

CharacteristicSolution solve_characteristics_cosymplectic(const ScalarField& H, const Vec& labels,
                                                          const std::function<double(double)>& initial, double t0,
                                                          double t1, std::size_t outputs, const IntegratorConfig& cfg,
                                                          ResidualMode mode) {
  if (H.dim() != 1) throw Error(ErrorCode::InvalidArgument, "characteristics solver handles n = 1 only");
  if (labels.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two characteristic labels");
  if (outputs < 2) throw Error(ErrorCode::InvalidArgument, "need at least two output times");
  if (!(t1 > t0)) throw Error(ErrorCode::InvalidArgument, "empty span");
  for (std::size_t i = 1; i < labels.size(); ++i)
    if (!(labels[i] > labels[i - 1])) throw Error(ErrorCode::InvalidArgument, "labels must be strictly increasing");
  validate(cfg);

  Vec times(outputs);
  for (std::size_t k = 0; k < outputs; ++k)
    times[k] = k + 1 == outputs ? t1 : t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(outputs - 1);

  const double sign = mode == ResidualMode::Theorem ? -1.0 : 1.0;
  Vec gamma0(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    gamma0[i] = initial(labels[i]);
    if (!std::isfinite(gamma0[i])) throw Error(ErrorCode::InvalidArgument, "initial data is not finite");
  }

  // Curves are independent ODEs.
  std::vector<std::future<CharacteristicCurve>> jobs;
  jobs.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    jobs.push_back(std::async(std::launch::async, integrate_curve, std::cref(H), labels[i], gamma0[i],
                              std::cref(times), std::cref(cfg), sign));
  std::vector<CharacteristicCurve> curves;
  curves.reserve(labels.size());
  for (auto& j : jobs) curves.push_back(j.get());

  for (std::size_t k = 0; k < outputs; ++k)
    for (std::size_t i = 1; i < curves.size(); ++i)
      if (!(curves[i].q[k] > curves[i - 1].q[k])) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "characteristics %zu and %zu crossed by t = %.17g", i - 1, i, times[k]);
        throw Error(ErrorCode::CharacteristicsCrossed, msg);
      }
  return CharacteristicSolution(std::move(times), std::move(curves));
}

}  // namespace cohj
