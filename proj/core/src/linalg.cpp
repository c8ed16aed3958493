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

#include "lindblad_pc/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "lindblad_pc/errors.hpp"

namespace lindblad_pc {

bool all_finite(const CMatrix& a) {
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    }
  }
  return true;
}

CMatrix SubspaceBasis::projector() const { return columns * columns.adjoint(); }

double SubspaceBasis::distance(const CVector& v) const {
  if (v.size() != ambient) throw DimensionMismatch("vector length does not match subspace ambient dimension");
  if (rank() == 0) return v.norm();
  return (v - columns * (columns.adjoint() * v)).norm();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector vec(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unvec(const CVector& v, Index d) {
  if (d <= 0 || v.size() != d * d) {
    throw DimensionMismatch("unvec: vector of length " + std::to_string(v.size()) +
                            " is not " + std::to_string(d) + "^2");
  }
  return Eigen::Map<const CMatrix>(v.data(), d, d);
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionMismatch("commutator needs square matrices of equal size");
  }
  return a * b - b * a;
}

namespace {

double norm1(const CMatrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// Pade coefficients b_0..b_m for m = 3, 5, 7, 9, 13.
constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                           30270240.0,    2162160.0,    110880.0,     3960.0,
                                           90.0,          1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Largest 1-norms for which each degree is accurate to unit roundoff.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <std::size_t N>
CMatrix pade_low(const CMatrix& a, const std::array<double, N>& b) {
  const Index n = a.rows();
  const CMatrix ident = CMatrix::Identity(n, n);
  const CMatrix a2 = a * a;
  CMatrix power = ident;
  CMatrix u_inner = b[1] * ident;
  CMatrix v = b[0] * ident;
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * a2;
    u_inner += b[k + 1] * power;
    v += b[k] * power;
  }
  const CMatrix u = a * u_inner;
  return (v - u).partialPivLu().solve(v + u);
}

CMatrix pade13(const CMatrix& a) {
  const auto& b = kPade13;
  const Index n = a.rows();
  const CMatrix ident = CMatrix::Identity(n, n);
  const CMatrix a2 = a * a;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;
  const CMatrix u_inner =
      a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  const CMatrix u = a * u_inner;
  const CMatrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

CMatrix expm(const CMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("expm needs a square matrix");
  if (!all_finite(a)) throw NonFinite("expm: input has non-finite entries");
  if (a.size() == 0) return a;
  const double norm = norm1(a);
  CMatrix result;
  if (norm <= kTheta3) {
    result = pade_low(a, kPade3);
  } else if (norm <= kTheta5) {
    result = pade_low(a, kPade5);
  } else if (norm <= kTheta7) {
    result = pade_low(a, kPade7);
  } else if (norm <= kTheta9) {
    result = pade_low(a, kPade9);
  } else {
    int squarings = 0;
    if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
    result = pade13(a / std::ldexp(1.0, squarings));
    for (int i = 0; i < squarings; ++i) result = result * result;
  }
  if (!all_finite(result)) throw NonFinite("expm: result overflowed");
  return result;
}

SubspaceBasis null_space(const CMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) throw DimensionMismatch("null_space expects a square matrix");
  if (!all_finite(a)) throw NonFinite("null_space: input has non-finite entries");
  const Index n = a.cols();
  SubspaceBasis basis;
  basis.ambient = n;
  if (n == 0) return basis;
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  constexpr double kAbsoluteFloor = 1e-14;
  if (sigma_max <= kAbsoluteFloor) {
    basis.columns = CMatrix::Identity(n, n);
    return basis;
  }
  const double cutoff = rel_tol * sigma_max;
  Index first = n;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) <= cutoff) {
      first = i;
      break;
    }
  }
  basis.columns = svd.matrixV().rightCols(n - first);
  return basis;
}

int minimal_poly_degree(const CMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) throw DimensionMismatch("minimal_poly_degree expects a square matrix");
  if (!all_finite(a)) throw NonFinite("minimal_poly_degree: input has non-finite entries");
  const Index n = a.rows();
  if (n == 0) return 0;
  const Index len = n * n;
  // Columns are normalized vec(A^k); A^k is carried normalized to avoid overflow.
  CMatrix powers(len, n + 1);
  CMatrix current = CMatrix::Identity(n, n);
  for (Index k = 0; k <= n; ++k) {
    const double norm = current.norm();
    if (norm > 0.0) current /= norm;
    powers.col(k) = vec(current);
    if (k > 0) {
      const CMatrix block = powers.leftCols(k + 1);
      const CMatrix gram = block.adjoint() * block;
      Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
      const auto& ev = eig.eigenvalues();
      if (ev(0) <= rel_tol * ev(ev.size() - 1)) return static_cast<int>(k);
    }
    current = current * a;
  }
  return static_cast<int>(n);
}

}  // namespace lindblad_pc
