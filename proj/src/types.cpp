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

#include "cohj/types.hpp"

#include <algorithm>
#include <cmath>

namespace cohj {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsupportedStructure: return "UnsupportedStructure";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NonHorizontalForm: return "NonHorizontalForm";
    case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SingularityError: return "SingularityError";
    case ErrorCode::RootFindFailure: return "RootFindFailure";
    case ErrorCode::CharacteristicsCrossed: return "CharacteristicsCrossed";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool all_finite(const Vec& v) noexcept {
  return std::all_of(v.begin(), v.end(), [](double c) { return std::isfinite(c); });
}

void validate(const PhasePoint& x) {
  if (x.q.empty()) throw Error(ErrorCode::InvalidArgument, "phase point needs n >= 1");
  if (x.q.size() != x.p.size())
    throw Error(ErrorCode::InvalidArgument, "q and p must have the same length");
  if (!all_finite(x.q) || !all_finite(x.p) || !std::isfinite(x.t))
    throw Error(ErrorCode::InvalidArgument, "phase point has non-finite components");
}

PhasePoint make_point(Vec q, Vec p, double t) {
  PhasePoint x{std::move(q), std::move(p), t};
  validate(x);
  return x;
}

TangentVector zero_vector(std::size_t n) { return {Vec(n, 0.0), Vec(n, 0.0), 0.0}; }
OneForm zero_form(std::size_t n) { return {Vec(n, 0.0), Vec(n, 0.0), 0.0}; }

namespace {

Vec join(const Vec& a, const Vec& b, double c) {
  Vec y;
  y.reserve(a.size() + b.size() + 1);
  y.insert(y.end(), a.begin(), a.end());
  y.insert(y.end(), b.begin(), b.end());
  y.push_back(c);
  return y;
}

void split(const Vec& y, std::size_t n, Vec& a, Vec& b, double& c) {
  if (y.size() != 2 * n + 1) throw Error(ErrorCode::InvalidArgument, "flat vector has wrong length");
  a.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
  b.assign(y.begin() + static_cast<std::ptrdiff_t>(n), y.begin() + static_cast<std::ptrdiff_t>(2 * n));
  c = y[2 * n];
}

}  // namespace

Vec to_flat(const PhasePoint& x) { return join(x.q, x.p, x.t); }
Vec to_flat(const TangentVector& v) { return join(v.dq, v.dp, v.dt); }
Vec to_flat(const OneForm& a) { return join(a.aq, a.ap, a.at); }

PhasePoint point_from_flat(const Vec& y, std::size_t n) {
  PhasePoint x;
  split(y, n, x.q, x.p, x.t);
  return x;
}

TangentVector vector_from_flat(const Vec& y, std::size_t n) {
  TangentVector v;
  split(y, n, v.dq, v.dp, v.dt);
  return v;
}

OneForm form_from_flat(const Vec& y, std::size_t n) {
  OneForm a;
  split(y, n, a.aq, a.ap, a.at);
  return a;
}

double pair(const OneForm& a, const TangentVector& X) {
  if (a.aq.size() != X.dq.size() || a.ap.size() != X.dp.size())
    throw Error(ErrorCode::InvalidArgument, "pairing of mismatched dimensions");
  double s = a.at * X.dt;
  for (std::size_t i = 0; i < a.aq.size(); ++i) s += a.aq[i] * X.dq[i] + a.ap[i] * X.dp[i];
  return s;
}

namespace {

double max_abs_diff_flat(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

double max_abs_diff(const TangentVector& a, const TangentVector& b) {
  return max_abs_diff_flat(to_flat(a), to_flat(b));
}

double max_abs_diff(const OneForm& a, const OneForm& b) {
  return max_abs_diff_flat(to_flat(a), to_flat(b));
}

double max_abs(const OneForm& a) {
  double m = 0.0;
  for (double c : to_flat(a)) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace cohj
