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

#include <optional>

#include "cohj/scalar_field.hpp"

// Geometric structures on T*Q x R evaluated in a single global Darboux chart.
//
//   symplectic    Omega = sum dq^i ^ dp_i on the (q, p) factor
//   cosymplectic  eta = dt, Omega_H = sum dq^i ^ dp_i + dH ^ dt
//   contact       eta = dt - sum p_i dq^i, Omega = d eta
//   l.c.s.        Omega = e^sigma sum dq^i ^ dp_i, Lee form d sigma
//
// flat(X) = i_X Omega + eta(X) eta, sharp is its inverse, and the Reeb field
// satisfies i_R eta = 1, i_R Omega = 0.

namespace cohj {

enum class StructureKind { Symplectic, Cosymplectic, Contact, LCS };

const char* structure_name(StructureKind kind) noexcept;

class GeometricStructure {
 public:
  static GeometricStructure symplectic(std::size_t n);
  /// Cosymplectic structure (dt, Omega_H) for the Hamiltonian H.
  static GeometricStructure cosymplectic(ScalarField hamiltonian);
  /// Cosymplectic structure with H = 0, i.e. (dt, sum dq ^ dp).
  static GeometricStructure cosymplectic(std::size_t n);
  static GeometricStructure contact(std::size_t n);
  static GeometricStructure lcs(ScalarField sigma);

  StructureKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return n_; }
  /// The Hamiltonian of a cosymplectic structure, or the conformal exponent of an l.c.s.
  const ScalarField& field() const;

 private:
  GeometricStructure(StructureKind kind, std::size_t n, std::optional<ScalarField> field)
      : kind_(kind), n_(n), field_(std::move(field)) {}

  StructureKind kind_;
  std::size_t n_;
  std::optional<ScalarField> field_;
};

/// Coefficients of eta at x. Cosymplectic and contact only.
OneForm eval_eta(const GeometricStructure& s, const PhasePoint& x);

/// i_X Omega at x. Cosymplectic and contact only.
OneForm omega_contraction(const GeometricStructure& s, const TangentVector& X, const PhasePoint& x);

OneForm flat(const GeometricStructure& s, const TangentVector& X, const PhasePoint& x);

/// Solves the (2n+1)-dimensional linear system flat(X) = a. Throws
/// SingularMatrix when the system is numerically singular or the solution
/// fails to round-trip within 1e-10.
TangentVector sharp(const GeometricStructure& s, const OneForm& a, const PhasePoint& x);

TangentVector reeb(const GeometricStructure& s, const PhasePoint& x);

/// Determinant of the flat map; nonzero exactly when eta ^ Omega^n is.
double flat_determinant(const GeometricStructure& s, const PhasePoint& x);

/// Lambda(a, b) from the closed-form bivector.
double bivector(const GeometricStructure& s, const OneForm& a, const OneForm& b, const PhasePoint& x);

/// The vector field Z of the Jacobi pair (Lambda, Z): zero for Poisson
/// structures, the Reeb field for contact.
TangentVector jacobi_vector(const GeometricStructure& s, const PhasePoint& x);

/// {f, g} = Lambda(df, dg) + f Z(g) - g Z(f).
double bracket(const GeometricStructure& s, const ScalarField& f, const ScalarField& g, const PhasePoint& x);

/// The bracket {f, g} as a field in its own right, with its gradient computed
/// from the second derivatives of f and g. Used for nested brackets.
ScalarField bracket_field(const GeometricStructure& s, const ScalarField& f, const ScalarField& g);

/// Jacobi identity defect {f,{g,h}} + {g,{h,f}} + {h,{f,g}} at x.
double jacobi_defect(const GeometricStructure& s, const ScalarField& f, const ScalarField& g,
                     const ScalarField& h, const PhasePoint& x);

/// Vertical lift of a horizontal one-form a = sum a_i dq^i: -sum a_i d/dp_i.
TangentVector vertical_lift(const OneForm& a, const PhasePoint& x);

struct LcsFields {
  double factor = 1.0;  // e^{-sigma}
  TangentVector z;      // e^{-sigma} sum (sigma_p d/dq - sigma_q d/dp)
  OneForm lee_form;     // d sigma
};

/// Conformal factor, Z and Lee form of the l.c.s. structure generated by
/// sigma. The t slot of x is ignored.
LcsFields lcs_fields(const ScalarField& sigma, const PhasePoint& x);

}  // namespace cohj
