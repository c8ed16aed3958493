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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lindblad_pc/linalg.hpp"
#include "lindblad_pc/model.hpp"

namespace lindblad_pc {

/// Seven structured points {0.1, 0.5, 1, 2, pi, 5, 8} * time_scale followed by
/// five pseudo-random points in (0, 8 * time_scale) drawn with seed 42.
std::vector<double> default_sample_times(double time_scale = 1.0);

struct FunctionalCommutativity {
  /// max ||[X, Y]|| / (||X|| ||Y||) over pairs of constant components {L_H, L^(k)}.
  double component_residual = 0.0;
  /// max ||[L(t_i), L(t_j)]|| / (||L(t_i)|| ||L(t_j)||) over sample pairs.
  double sample_residual = 0.0;
  bool components_commute = false;
  bool samples_commute = false;

  bool holds() const noexcept { return components_commute && samples_commute; }
};

/// Both the constant-component (Martin decomposition) check and the sampled
/// check, reported separately. Needs at least two sample times.
FunctionalCommutativity functional_commutativity_detail(const GeneratorDecomposition& g,
                                                        std::span<const double> times,
                                                        double tol = kDefaultRelTol);

bool functional_commutativity(const GeneratorDecomposition& g, std::span<const double> times,
                              double tol = kDefaultRelTol);

/// ||[L(t), B(t)]|| <= tol * ||L(t)|| ||B(t)|| at every sample time.
bool integral_commutativity(const GeneratorDecomposition& g, std::span<const double> times,
                            double tol = kDefaultRelTol);

/// Gamma(t) = sum_{n=1}^{power_cap} C_n^dag C_n with C_n = [L(t), B^n(t)] / ||B^n(t)||.
CMatrix gamma_operator(const GeneratorDecomposition& g, double t, int power_cap);

/// min(mu - 1, deg(B(t0)) - 1) with t0 the median sample time, at least 1.
int power_cap_for(const GeneratorDecomposition& g, std::span<const double> times,
                  double rel_tol = kDefaultRelTol);

struct PartialSubspace {
  SubspaceBasis basis;
  int power_cap = 0;
};

/// Kernel of sum_t Gamma(t): the vectors alpha with [L(t), B^n(t)] alpha = 0
/// for every sampled t and n <= power cap. Needs >= 3 distinct positive times.
PartialSubspace partial_subspace_detail(const GeneratorDecomposition& g, std::span<const double> times,
                                        double rel_tol = kDefaultRelTol);

SubspaceBasis partial_subspace(const GeneratorDecomposition& g, std::span<const double> times,
                               double rel_tol = kDefaultRelTol);

/// Throws NotADensityMatrix naming the first failed invariant.
void check_density_matrix(const CMatrix& rho, double tol);

/// True iff rho is a density matrix and ||(1 - P) vec(rho)|| <= tol for the
/// projector P onto `subspace`.
bool admissible(const CMatrix& rho, const SubspaceBasis& subspace, double tol);

/// A complement entry (i, j), 1-based, meaning rho_ij must vanish.
struct MatrixEntry {
  int row = 0;
  int col = 0;
  Index coordinate = 0;  // 1-based position in column-major vec
};

/// If the orthogonal complement of `subspace` is spanned by coordinate axes,
/// returns those coordinates as matrix entries. Returns nullopt otherwise,
/// and an empty list for the full space.
std::optional<std::vector<MatrixEntry>> excluded_entries(const SubspaceBasis& subspace, int dimension,
                                                         double tol = 1e-8);

struct CommutativityReport {
  bool functional = false;
  bool integral = false;
  FunctionalCommutativity functional_detail;
  Index partial_rank = 0;
  SubspaceBasis subspace;
  int power_cap = 0;
  std::vector<double> sample_times;
  /// max over the verification grid, n <= power_cap and basis vectors b_i of
  /// ||[L(t), B^n(t)] b_i|| / ||B^n(t)||.
  double residual_max = 0.0;
  std::vector<double> verification_times;
  std::optional<std::vector<MatrixEntry>> excluded;

  /// e.g. "full (dim 9)" or "dim 8; admissible states satisfy ρ_33 = 0".
  std::string describe_subspace() const;
};

/// Residual bound reported as verified by classify.
inline constexpr double kFedorovResidualBound = 1e-8;

CommutativityReport classify(const GeneratorDecomposition& g, std::span<const double> times,
                             double rel_tol = kDefaultRelTol);

/// Human-readable "ρ_ij" label, 1-based.
std::string entry_label(const MatrixEntry& e);

}  // namespace lindblad_pc
