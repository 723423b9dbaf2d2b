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

#include "cohj/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace cohj {

const char* structure_name(StructureKind kind) noexcept {
  switch (kind) {
    case StructureKind::Symplectic: return "symplectic";
    case StructureKind::Cosymplectic: return "cosymplectic";
    case StructureKind::Contact: return "contact";
    case StructureKind::LCS: return "lcs";
  }
  return "unknown";
}

GeometricStructure GeometricStructure::symplectic(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "structure needs n >= 1");
  return {StructureKind::Symplectic, n, std::nullopt};
}

GeometricStructure GeometricStructure::cosymplectic(ScalarField hamiltonian) {
  const std::size_t n = hamiltonian.dim();
  return {StructureKind::Cosymplectic, n, std::move(hamiltonian)};
}

GeometricStructure GeometricStructure::cosymplectic(std::size_t n) {
  return cosymplectic(constant_field(n, 0.0));
}

GeometricStructure GeometricStructure::contact(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "structure needs n >= 1");
  return {StructureKind::Contact, n, std::nullopt};
}

GeometricStructure GeometricStructure::lcs(ScalarField sigma) {
  const std::size_t n = sigma.dim();
  return {StructureKind::LCS, n, std::move(sigma)};
}

const ScalarField& GeometricStructure::field() const {
  if (!field_) throw Error(ErrorCode::UnsupportedStructure, "structure carries no scalar field");
  return *field_;
}

namespace {

using Matrix = Eigen::MatrixXd;

void require_almost_cosymplectic(const GeometricStructure& s, const char* op) {
  if (s.kind() != StructureKind::Cosymplectic && s.kind() != StructureKind::Contact)
    throw Error(ErrorCode::UnsupportedStructure,
                std::string(op) + " is defined for cosymplectic and contact structures, not " +
                    structure_name(s.kind()));
}

void require_dim(const GeometricStructure& s, const PhasePoint& x) {
  if (x.dim() != s.dim()) throw Error(ErrorCode::InvalidArgument, "point dimension does not match structure");
}

Eigen::VectorXd as_eigen(const Vec& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())); }

Vec as_vec(const Eigen::VectorXd& v) { return Vec(v.data(), v.data() + v.size()); }

// Omega as an antisymmetric matrix W with Omega(X, Y) = X^T W Y.
Matrix omega_matrix(const GeometricStructure& s, const PhasePoint& x) {
  const auto n = static_cast<Eigen::Index>(s.dim());
  Matrix w = Matrix::Zero(2 * n + 1, 2 * n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i, n + i) = 1.0;
    w(n + i, i) = -1.0;
  }
  if (s.kind() == StructureKind::Cosymplectic) {
    // dH ^ dt
    Vec dh = to_flat(s.field().gradient(x));
    const Eigen::Index t = 2 * n;
    for (Eigen::Index k = 0; k < t; ++k) {
      w(k, t) += dh[static_cast<std::size_t>(k)];
      w(t, k) -= dh[static_cast<std::size_t>(k)];
    }
  }
  return w;
}

Eigen::VectorXd eta_vector(const GeometricStructure& s, const PhasePoint& x) {
  return as_eigen(to_flat(eval_eta(s, x)));
}

// Matrix of the flat map acting on flat tangent components.
Matrix flat_matrix(const GeometricStructure& s, const PhasePoint& x) {
  Eigen::VectorXd e = eta_vector(s, x);
  return omega_matrix(s, x).transpose() + e * e.transpose();
}

// Lambda(a, b) = a^T P b.
Matrix poisson_matrix(const GeometricStructure& s, const PhasePoint& x) {
  const auto n = static_cast<Eigen::Index>(s.dim());
  Matrix p = Matrix::Zero(2 * n + 1, 2 * n + 1);
  double scale = 1.0;
  if (s.kind() == StructureKind::LCS) scale = std::exp(-s.field()(x));
  for (Eigen::Index i = 0; i < n; ++i) {
    p(i, n + i) = scale;
    p(n + i, i) = -scale;
  }
  if (s.kind() == StructureKind::Contact) {
    // p_i d/dt ^ d/dp_i
    for (Eigen::Index i = 0; i < n; ++i) {
      p(2 * n, n + i) = x.p[static_cast<std::size_t>(i)];
      p(n + i, 2 * n) = -x.p[static_cast<std::size_t>(i)];
    }
  }
  return p;
}

// d/dx_k of the Poisson matrix.
Matrix poisson_matrix_derivative(const GeometricStructure& s, const PhasePoint& x, Eigen::Index k) {
  const auto n = static_cast<Eigen::Index>(s.dim());
  Matrix d = Matrix::Zero(2 * n + 1, 2 * n + 1);
  if (s.kind() == StructureKind::Contact) {
    if (k >= n && k < 2 * n) {
      d(2 * n, k) = 1.0;
      d(k, 2 * n) = -1.0;
    }
  } else if (s.kind() == StructureKind::LCS) {
    const double sk = to_flat(s.field().gradient(x))[static_cast<std::size_t>(k)];
    d = -sk * poisson_matrix(s, x);
    if (k == 2 * n) d.setZero();
  }
  return d;
}

}  // namespace

OneForm eval_eta(const GeometricStructure& s, const PhasePoint& x) {
  require_almost_cosymplectic(s, "eta");
  require_dim(s, x);
  OneForm eta = zero_form(s.dim());
  eta.at = 1.0;
  if (s.kind() == StructureKind::Contact)
    for (std::size_t i = 0; i < s.dim(); ++i) eta.aq[i] = -x.p[i];
  return eta;
}

OneForm omega_contraction(const GeometricStructure& s, const TangentVector& X, const PhasePoint& x) {
  require_almost_cosymplectic(s, "omega contraction");
  require_dim(s, x);
  Eigen::VectorXd v = omega_matrix(s, x).transpose() * as_eigen(to_flat(X));
  return form_from_flat(as_vec(v), s.dim());
}

OneForm flat(const GeometricStructure& s, const TangentVector& X, const PhasePoint& x) {
  require_almost_cosymplectic(s, "flat");
  require_dim(s, x);
  if (X.dim() != s.dim()) throw Error(ErrorCode::InvalidArgument, "vector dimension does not match structure");
  Eigen::VectorXd v = flat_matrix(s, x) * as_eigen(to_flat(X));
  return form_from_flat(as_vec(v), s.dim());
}

TangentVector sharp(const GeometricStructure& s, const OneForm& a, const PhasePoint& x) {
  require_almost_cosymplectic(s, "sharp");
  require_dim(s, x);
  if (a.dim() != s.dim()) throw Error(ErrorCode::InvalidArgument, "form dimension does not match structure");
  const Matrix m = flat_matrix(s, x);
  Eigen::FullPivLU<Matrix> lu(m);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularMatrix, "flat map is singular at this point");
  const Eigen::VectorXd rhs = as_eigen(to_flat(a));
  const Eigen::VectorXd sol = lu.solve(rhs);
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  if (!sol.allFinite() || (m * sol - rhs).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw Error(ErrorCode::SingularMatrix, "sharp failed to round-trip through flat");
  return vector_from_flat(as_vec(sol), s.dim());
}

TangentVector reeb(const GeometricStructure& s, const PhasePoint& x) {
  require_almost_cosymplectic(s, "reeb");
  require_dim(s, x);
  TangentVector r = zero_vector(s.dim());
  r.dt = 1.0;
  if (s.kind() == StructureKind::Cosymplectic) {
    const Gradient g = s.field().gradient(x);
    for (std::size_t i = 0; i < s.dim(); ++i) {
      r.dq[i] = g.dp[i];
      r.dp[i] = -g.dq[i];
    }
  }
  return r;
}

double flat_determinant(const GeometricStructure& s, const PhasePoint& x) {
  require_almost_cosymplectic(s, "flat determinant");
  require_dim(s, x);
  return flat_matrix(s, x).determinant();
}

double bivector(const GeometricStructure& s, const OneForm& a, const OneForm& b, const PhasePoint& x) {
  require_dim(s, x);
  const Vec va = to_flat(a);
  const Vec vb = to_flat(b);
  const Matrix P = poisson_matrix(s, x);
  // Summing over i < j keeps Lambda(a, b) = -Lambda(b, a) exact in floating point.
  double sum = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i)
    for (std::size_t j = i + 1; j < va.size(); ++j) {
      const double pij = P(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (pij != 0.0) sum += pij * (va[i] * vb[j] - va[j] * vb[i]);
    }
  return sum;
}

TangentVector jacobi_vector(const GeometricStructure& s, const PhasePoint& x) {
  require_dim(s, x);
  switch (s.kind()) {
    case StructureKind::Contact: {
      TangentVector z = zero_vector(s.dim());
      z.dt = 1.0;
      return z;
    }
    case StructureKind::LCS: return lcs_fields(s.field(), x).z;
    default: return zero_vector(s.dim());
  }
}

double bracket(const GeometricStructure& s, const ScalarField& f, const ScalarField& g, const PhasePoint& x) {
  require_dim(s, x);
  const OneForm df = f.differential(x);
  const OneForm dg = g.differential(x);
  double value = bivector(s, df, dg, x);
  if (s.kind() == StructureKind::Contact || s.kind() == StructureKind::LCS) {
    const TangentVector z = jacobi_vector(s, x);
    value += f(x) * pair(dg, z) - g(x) * pair(df, z);
  }
  return value;
}

namespace {

Matrix to_matrix(const Hessian& h) {
  const auto m = static_cast<Eigen::Index>(h.size());
  Matrix out(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

// Jacobian of the Jacobi vector field Z, column k = dZ/dx_k.
Matrix jacobi_vector_jacobian(const GeometricStructure& s, const PhasePoint& x) {
  const auto n = static_cast<Eigen::Index>(s.dim());
  Matrix j = Matrix::Zero(2 * n + 1, 2 * n + 1);
  if (s.kind() != StructureKind::LCS) return j;
  const ScalarField& sigma = s.field();
  const double factor = std::exp(-sigma(x));
  const Vec ds = to_flat(sigma.gradient(x));
  const Matrix hs = to_matrix(sigma.hessian(x));
  const Eigen::VectorXd z = as_eigen(to_flat(lcs_fields(sigma, x).z));
  for (Eigen::Index k = 0; k < 2 * n; ++k) {
    Eigen::VectorXd col = -ds[static_cast<std::size_t>(k)] * z;
    for (Eigen::Index i = 0; i < n; ++i) {
      col(i) += factor * hs(n + i, k);
      col(n + i) -= factor * hs(i, k);
    }
    j.col(k) = col;
  }
  return j;
}

}  // namespace

ScalarField bracket_field(const GeometricStructure& s, const ScalarField& f, const ScalarField& g) {
  if (f.dim() != s.dim() || g.dim() != s.dim())
    throw Error(ErrorCode::InvalidArgument, "bracket of fields with mismatched dimension");
  auto value = [s, f, g](const PhasePoint& x) { return bracket(s, f, g, x); };
  auto gradient = [s, f, g](const PhasePoint& x) {
    const std::size_t n = s.dim();
    const auto m = static_cast<Eigen::Index>(2 * n + 1);
    const Eigen::VectorXd df = as_eigen(to_flat(f.gradient(x)));
    const Eigen::VectorXd dg = as_eigen(to_flat(g.gradient(x)));
    const Matrix hf = to_matrix(f.hessian(x));
    const Matrix hg = to_matrix(g.hessian(x));
    const Matrix p = poisson_matrix(s, x);
    const Eigen::VectorXd z = as_eigen(to_flat(jacobi_vector(s, x)));
    const Matrix jz = jacobi_vector_jacobian(s, x);
    const double fv = f(x);
    const double gv = g(x);
    // d/dx_k [df^T P dg + f Z.dg - g Z.df]
    Eigen::VectorXd out = hf * (p * dg) + hg * (p.transpose() * df);
    for (Eigen::Index k = 0; k < m; ++k) out(k) += df.dot(poisson_matrix_derivative(s, x, k) * dg);
    out += df * z.dot(dg) + fv * (jz.transpose() * dg + hg * z);
    out -= dg * z.dot(df) + gv * (jz.transpose() * df + hf * z);
    const Vec flat = as_vec(out);
    return Gradient{Vec(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(n)),
                    Vec(flat.begin() + static_cast<std::ptrdiff_t>(n), flat.begin() + static_cast<std::ptrdiff_t>(2 * n)),
                    flat[2 * n]};
  };
  return ScalarField(s.dim(), value, gradient);
}

double jacobi_defect(const GeometricStructure& s, const ScalarField& f, const ScalarField& g,
                     const ScalarField& h, const PhasePoint& x) {
  return bracket(s, f, bracket_field(s, g, h), x) + bracket(s, g, bracket_field(s, h, f), x) +
         bracket(s, h, bracket_field(s, f, g), x);
}

TangentVector vertical_lift(const OneForm& a, const PhasePoint& x) {
  if (a.dim() != x.dim()) throw Error(ErrorCode::InvalidArgument, "form dimension does not match point");
  if (a.at != 0.0 || std::any_of(a.ap.begin(), a.ap.end(), [](double c) { return c != 0.0; }))
    throw Error(ErrorCode::NonHorizontalForm, "vertical lift needs a form with only dq components");
  TangentVector v = zero_vector(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) v.dp[i] = -a.aq[i];
  return v;
}

LcsFields lcs_fields(const ScalarField& sigma, const PhasePoint& x) {
  const std::size_t n = sigma.dim();
  if (x.dim() != n) throw Error(ErrorCode::InvalidArgument, "point dimension does not match sigma");
  LcsFields out;
  out.factor = std::exp(-sigma(x));
  Gradient g = sigma.gradient(x);
  out.z = zero_vector(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.z.dq[i] = out.factor * g.dp[i];
    out.z.dp[i] = -out.factor * g.dq[i];
  }
  out.lee_form = {std::move(g.dq), std::move(g.dp), 0.0};
  return out;
}

}  // namespace cohj
