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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lindblad_pc/errors.hpp"
#include "lindblad_pc/linalg.hpp"
#include "reference.hpp"

namespace lindblad_pc {
namespace {

using reference::random_complex;

CMatrix diag2(Complex a, Complex b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

TEST(Kron, Examples) {
  EXPECT_TRUE(kron(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)).isApprox(CMatrix::Identity(4, 4)));
  const CMatrix k = kron(diag2(2.0, 5.0), CMatrix::Identity(2, 2));
  CMatrix expected = CMatrix::Zero(4, 4);
  expected.diagonal() << 2.0, 2.0, 5.0, 5.0;
  EXPECT_EQ(k, expected);
}

TEST(Vec, ColumnStacking) {
  CMatrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;  // [[a, b], [c, d]]
  CVector expected(4);
  expected << 1.0, 3.0, 2.0, 4.0;
  EXPECT_EQ(vec(m), expected);
  EXPECT_EQ(unvec(vec(m), 2), m);
  EXPECT_THROW(unvec(CVector::Zero(5), 2), DimensionMismatch);
}

TEST(Commutator, Examples) {
  std::mt19937_64 rng(1);
  const CMatrix a = random_complex(rng, 3, 3);
  EXPECT_EQ(commutator(a, a), CMatrix::Zero(3, 3));
  EXPECT_EQ(commutator(diag2(1.0, 2.0), diag2(3.0, -1.0)), CMatrix::Zero(2, 2));
  CMatrix e12 = CMatrix::Zero(2, 2), e21 = CMatrix::Zero(2, 2);
  e12(0, 1) = 1.0;
  e21(1, 0) = 1.0;
  EXPECT_EQ(commutator(e12, e21), diag2(1.0, -1.0));
}

TEST(RothLemma, HoldsOnRandomTriples) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 100; ++k) {
    const CMatrix a = random_complex(rng, 4, 4);
    const CMatrix b = random_complex(rng, 4, 4);
    const CMatrix c = random_complex(rng, 4, 4);
    const CVector lhs = vec(a * b * c);
    const CVector rhs = kron(c.transpose(), a) * vec(b);
    EXPECT_LE((lhs - rhs).norm(), 1e-12 * a.norm() * b.norm() * c.norm());
  }
}

TEST(Expm, ZeroAndDiagonal) {
  EXPECT_EQ(expm(CMatrix::Zero(3, 3)), CMatrix::Identity(3, 3));
  const CMatrix d = diag2(Complex(0.5, 2.0), -3.0);
  const CMatrix e = expm(d);
  EXPECT_NEAR(std::abs(e(0, 0) - std::exp(Complex(0.5, 2.0))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e(1, 1) - std::exp(-3.0)), 0.0, 1e-15);
}

TEST(Expm, NilpotentIsAFinitePolynomial) {
  CMatrix n = CMatrix::Zero(3, 3);
  n(0, 1) = 2.0;
  n(1, 2) = -1.5;
  const CMatrix expected = CMatrix::Identity(3, 3) + n + n * n / 2.0;
  EXPECT_LE((expm(n) - expected).norm(), 1e-14);
}

TEST(Expm, MatchesTaylorSeriesForModerateNorms) {
  std::mt19937_64 rng(9);
  for (double scale : {0.01, 0.3, 1.0, 4.0}) {
    const CMatrix a = random_complex(rng, 5, 5) * (scale / 5.0);
    CMatrix sum = CMatrix::Identity(5, 5), term = CMatrix::Identity(5, 5);
    for (int k = 1; k < 80; ++k) {
      term = term * a / static_cast<double>(k);
      sum += term;
    }
    EXPECT_LE((expm(a) - sum).norm(), 1e-12 * sum.norm()) << "scale " << scale;
  }
}

TEST(Expm, GroupPropertyForLargeNorms) {
  std::mt19937_64 rng(10);
  const CMatrix a = random_complex(rng, 6, 6) * 3.0;
  const CMatrix half = expm(a / 2.0);
  const CMatrix full = expm(a);
  EXPECT_LE((half * half - full).norm(), 1e-9 * full.norm());
  EXPECT_LE((expm(a) * expm(-a) - CMatrix::Identity(6, 6)).norm(), 1e-8);
}

TEST(Expm, DerivativeMatchesGenerator) {
  // d/ds expm(sA) = A expm(sA)
  std::mt19937_64 rng(12);
  for (int k = 0; k < 20; ++k) {
    const CMatrix a = random_complex(rng, 4, 4);
    const double s = 0.7, h = 1e-5;
    const CMatrix fd = (expm((s + h) * a) - expm((s - h) * a)) / (2.0 * h);
    const CMatrix exact = a * expm(s * a);
    EXPECT_LE((fd - exact).norm(), 1e-6 * exact.norm());
  }
}

TEST(Expm, RejectsNonFinite) {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(expm(a), NonFinite);
}

TEST(NullSpace, Examples) {
  const SubspaceBasis full = null_space(CMatrix::Zero(4, 4));
  EXPECT_EQ(full.rank(), 4);
  EXPECT_TRUE(full.is_full());
  const SubspaceBasis k = null_space(diag2(1.0, 0.0));
  ASSERT_EQ(k.rank(), 1);
  EXPECT_NEAR(std::abs(k.columns(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(k.columns(0, 0)), 0.0, 1e-15);
}

TEST(NullSpace, ProjectorAndDistance) {
  const SubspaceBasis k = null_space(diag2(1.0, 0.0));
  CVector v(2);
  v << 3.0, 4.0;
  EXPECT_NEAR(k.distance(v), 3.0, 1e-14);
  const CMatrix p = k.projector();
  EXPECT_LE((p * p - p).norm(), 1e-14);
}

TEST(NullSpace, KernelOfSumOfPsdIsIntersection) {
  // Ker(P + Q) = Ker P n Ker Q for positive semidefinite P, Q.
  std::mt19937_64 rng(77);
  for (int k = 0; k < 50; ++k) {
    const CMatrix x = random_complex(rng, 6, 3);
    const CMatrix y = random_complex(rng, 6, 2);
    const CMatrix p = x * x.adjoint();
    const CMatrix q = y * y.adjoint();
    const SubspaceBasis sum = null_space(p + q);
    // Ker Q restricted to Ker P, mapped back.
    const SubspaceBasis kp = null_space(p);
    const CMatrix restricted = kp.columns.adjoint() * q * kp.columns;
    const SubspaceBasis inner = null_space(restricted);
    const SubspaceBasis both{6, kp.columns * inner.columns};
    ASSERT_EQ(sum.rank(), both.rank());
    EXPECT_LE((sum.projector() - both.projector()).norm(), 1e-10);
  }
}

TEST(MinimalPolyDegree, Examples) {
  EXPECT_EQ(minimal_poly_degree(CMatrix::Identity(4, 4)), 1);
  CMatrix jordan = CMatrix::Zero(3, 3);
  jordan(0, 1) = 1.0;
  jordan(1, 2) = 1.0;
  EXPECT_EQ(minimal_poly_degree(jordan), 3);
  CMatrix d = CMatrix::Zero(4, 4);
  d.diagonal() << 1.0, 2.0, 2.0, 3.0;
  EXPECT_EQ(minimal_poly_degree(d), 3);
}

TEST(MinimalPolyDegree, ScaleInvariant) {
  std::mt19937_64 rng(4);
  CMatrix d = CMatrix::Zero(5, 5);
  d.diagonal() << 1.0, -1.0, 0.5, 0.5, 2.0;
  const CMatrix s = random_complex(rng, 5, 5);
  const CMatrix a = s * d * s.inverse();
  const int base = minimal_poly_degree(a);
  EXPECT_EQ(base, 4);
  for (double scale : {1e-3, 1e-1, 10.0, 1e3}) EXPECT_EQ(minimal_poly_degree(scale * a), base) << scale;
}

TEST(MinimalPolyDegree, GenericMatrixHasFullDegree) {
  std::mt19937_64 rng(8);
  EXPECT_EQ(minimal_poly_degree(random_complex(rng, 6, 6)), 6);
}

}  // namespace
}  // namespace lindblad_pc
