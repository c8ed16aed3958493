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

// Hand-derived trajectories for the built-in models and small helpers shared
// by the unit and acceptance tests. Nothing here calls the propagators.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <random>
#include <vector>

#include "lindblad_pc/linalg.hpp"

// Lets gtest print matrices in assertion messages.
namespace Eigen {
inline void PrintTo(const MatrixXcd& m, std::ostream* os) { *os << '\n' << m; }
inline void PrintTo(const VectorXcd& v, std::ostream* os) { *os << v.transpose(); }
}  // namespace Eigen

namespace lindblad_pc::reference {

inline constexpr double kPi = std::numbers::pi;

// V system from rho(0) = |1><1|/2 + |3><3|/2.
inline std::vector<double> v3_populations(double t, double w) {
  const double s = std::sin(2.0 * w * t) / (4.0 * w);
  const double p1 = 0.5 * std::exp((-2.0 * w * t + std::sin(2.0 * w * t)) / (4.0 * w));
  const double p2 = 1.0 - std::exp(-t / 2.0) * std::cosh(s);
  const double p3 = 0.5 * std::exp(-(2.0 * w * t + std::sin(2.0 * w * t)) / (4.0 * w));
  return {p1, p2, p3};
}

// |rho_13| for (|1> + e^{i phi}|3>)/sqrt 2 under the V system.
inline double v3_coherence_modulus(double t) { return 0.5 * std::exp(-t / 2.0); }

// Three-level cascade from p|1><1| + (1-p)|2><2|.
inline double cascade3_xi(double t, double w, double p) {
  return (1.0 - p) * std::exp(-(2.0 * w * t + std::sin(2.0 * w * t)) / (4.0 * w));
}
inline double cascade3_purity(double xi) { return 2.0 * xi * xi - 2.0 * xi + 1.0; }
inline double cascade3_entropy(double xi) {
  const auto h = [](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; };
  return h(1.0 - xi) + h(xi);
}
// sigma_12 for sigma(0) = [[1, e^{-i phi}], [e^{i phi}, 1]] / 2 on levels 1, 2.
inline std::complex<double> cascade3_sigma12(double t, double w, double e, double phi) {
  using namespace std::complex_literals;
  return 0.5 * std::exp((-0.25 + e * 1i) * t - std::sin(2.0 * w * t) / (8.0 * w)) * std::exp(-phi * 1i);
}

// Four-level cascade from |2><2|/3 + 2|3><3|/3.
inline std::vector<double> cascade4_populations(double t, double w) {
  const double decay = std::exp((-6.0 * w * t + std::sin(6.0 * w * t)) / (12.0 * w));
  const double s6 = std::sin(6.0 * w * t);
  const double p1 = 1.0 + decay * (-6.0 * (3.0 + t) * w + s6) / (18.0 * w);
  const double p2 = decay * (6.0 * (1.0 + t) * w - s6) / (18.0 * w);
  const double p3 = 2.0 / 3.0 * decay;
  return {p1, p2, p3, 0.0};
}

// Coherences of (|1> + e^{i phi12}|2> + e^{i phi13}|3>)/sqrt 3 under the
// four-level cascade with H = diag(-e2, -e1, e1, e2).
struct Cascade4Coherences {
  std::complex<double> s21, s31, s32;
};
inline Cascade4Coherences cascade4_coherences(double t, double w, double e1, double e2, double phi12,
                                              double phi13) {
  using namespace std::complex_literals;
  const double s = std::sin(6.0 * w * t) / (24.0 * w);
  Cascade4Coherences c;
  c.s21 = std::exp(-0.25 * t + (e1 - e2) * t * 1i + s) * std::exp(phi12 * 1i) / 3.0;
  c.s31 = std::exp(-0.25 * t - (e1 + e2) * t * 1i + s) * std::exp(phi13 * 1i) / 3.0;
  c.s32 = std::exp(-0.5 * t - 2.0 * e1 * t * 1i + 2.0 * s) * std::exp((phi13 - phi12) * 1i) / 3.0;
  return c;
}

// Pure state (|l_0> + sum_k e^{i phi_k}|l_k>)/sqrt(n), levels 1-based.
inline CMatrix phase_state(int d, const std::vector<int>& levels, const std::vector<double>& phases) {
  CVector psi = CVector::Zero(d);
  psi(levels[0] - 1) = 1.0;
  for (std::size_t k = 1; k < levels.size(); ++k) psi(levels[k] - 1) = std::polar(1.0, phases[k - 1]);
  psi /= std::sqrt(static_cast<double>(levels.size()));
  return psi * psi.adjoint();
}

inline CMatrix diagonal_state(const std::vector<double>& p) {
  CMatrix rho = CMatrix::Zero(static_cast<Index>(p.size()), static_cast<Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) rho(static_cast<Index>(i), static_cast<Index>(i)) = p[i];
  return rho;
}

inline CMatrix random_complex(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

// Random full-rank density matrix supported away from `empty_levels`.
inline CMatrix random_state(std::mt19937_64& rng, int d, const std::vector<int>& empty_levels = {}) {
  CMatrix a = random_complex(rng, d, d);
  for (int level : empty_levels) a.row(level - 1).setZero();
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

// Bank of admissible states: one random pure state and random mixed states,
// all with zero population on `empty_levels`.
inline std::vector<CMatrix> state_bank(int d, const std::vector<int>& empty_levels, std::uint64_t seed,
                                       int count = 10) {
  std::mt19937_64 rng(seed);
  std::vector<CMatrix> bank;
  for (int k = 0; k < count; ++k) {
    if (k == 1) {
      CVector psi = random_complex(rng, d, 1).col(0);
      for (int level : empty_levels) psi(level - 1) = 0.0;
      psi.normalize();
      bank.push_back(psi * psi.adjoint());
    } else {
      bank.push_back(random_state(rng, d, empty_levels));
    }
  }
  return bank;
}

}  // namespace lindblad_pc::reference
