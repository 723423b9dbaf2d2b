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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cohj {

using Vec = std::vector<double>;

/// Error categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  InvalidArgument = 1,
  UnsupportedStructure,
  SingularMatrix,
  NonHorizontalForm,
  StepLimitExceeded,
  NonFiniteState,
  DomainError,
  SingularityError,
  RootFindFailure,
  CharacteristicsCrossed,
  ConfigError,
  IoError,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A point (q, p, t) of the extended phase space in Darboux coordinates.
/// In the contact setting the t slot holds the action-like coordinate S.
struct PhasePoint {
  Vec q;
  Vec p;
  double t = 0.0;

  std::size_t dim() const noexcept { return q.size(); }
};

/// Components in the coordinate frame (d/dq^i, d/dp_i, d/dt).
struct TangentVector {
  Vec dq;
  Vec dp;
  double dt = 0.0;

  std::size_t dim() const noexcept { return dq.size(); }
};

/// Coefficients of dq^i, dp_i and dt.
struct OneForm {
  Vec aq;
  Vec ap;
  double at = 0.0;

  std::size_t dim() const noexcept { return aq.size(); }
};

/// Builds a validated point: equal lengths, n >= 1, all components finite.
PhasePoint make_point(Vec q, Vec p, double t);

/// Throws InvalidArgument unless the point satisfies the PhasePoint invariants.
void validate(const PhasePoint& x);

TangentVector zero_vector(std::size_t n);
OneForm zero_form(std::size_t n);

// Flat coordinate layout used by integrators and matrices: q_0..q_{n-1},
// p_0..p_{n-1}, t.
Vec to_flat(const PhasePoint& x);
PhasePoint point_from_flat(const Vec& y, std::size_t n);
Vec to_flat(const TangentVector& v);
TangentVector vector_from_flat(const Vec& y, std::size_t n);
Vec to_flat(const OneForm& a);
OneForm form_from_flat(const Vec& y, std::size_t n);

/// Pairing <a, X>.
double pair(const OneForm& a, const TangentVector& X);

/// Largest absolute component difference.
double max_abs_diff(const TangentVector& a, const TangentVector& b);
double max_abs_diff(const OneForm& a, const OneForm& b);
double max_abs(const OneForm& a);

bool all_finite(const Vec& v) noexcept;

}  // namespace cohj
