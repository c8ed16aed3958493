// Copyright 2026 The lindblad-pc Authors
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

#include <complex>
#include <Eigen/Dense>

namespace lindblad_pc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Rank threshold used wherever no other tolerance is given.
inline constexpr double kDefaultRelTol = 1e-10;

/// Orthonormal basis of a subspace of C^ambient, stored as matrix columns.
struct SubspaceBasis {
  Index ambient = 0;
  CMatrix columns;  // ambient x rank

  Index rank() const noexcept { return columns.cols(); }
  bool is_full() const noexcept { return rank() == ambient; }
  /// Orthogonal projector onto the subspace.
  CMatrix projector() const;
  /// Norm of the component of `v` orthogonal to the subspace.
  double distance(const CVector& v) const;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Column-stacking vectorization.
CVector vec(const CMatrix& m);
/// Inverse of vec for a d x d matrix; throws DimensionMismatch unless size == d*d.
CMatrix unvec(const CVector& v, Index d);

CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// Matrix exponential by scaling and squaring with Pade approximants of
/// degree 3..13 (Higham's 2005 selection). Throws NonFinite.
CMatrix expm(const CMatrix& a);

/// Numerical kernel: right singular vectors with sigma_i <= rel_tol * sigma_max.
/// If sigma_max is below 1e-14 the whole space is returned.
SubspaceBasis null_space(const CMatrix& a, double rel_tol = kDefaultRelTol);

/// Degree of the minimal polynomial, detected as the first power whose
/// normalized vectorization makes the Gram matrix of {vec(A^0),...,vec(A^m)}
/// rank deficient at rel_tol.
int minimal_poly_degree(const CMatrix& a, double rel_tol = kDefaultRelTol);

bool all_finite(const CMatrix& a);

}  // namespace lindblad_pc
