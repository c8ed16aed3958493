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
#include <span>
#include <utility>
#include <vector>

#include "lindblad_pc/linalg.hpp"
#include "lindblad_pc/solver.hpp"

namespace lindblad_pc {

/// Eigenvalues of (rho + rho^dag)/2 with noise above -1e-7 clamped to zero and
/// renormalized to unit sum. Throws NotADensityMatrix otherwise.
std::vector<double> clamped_spectrum(const CMatrix& rho);

double state_purity(const CMatrix& rho);
double von_neumann_entropy(const CMatrix& rho);

/// p_i(t) = Re rho_ii(t); one row per grid point.
std::vector<std::vector<double>> populations(const Trajectory& tr);
std::vector<double> purity(const Trajectory& tr);
std::vector<double> entropy(const Trajectory& tr);
/// rho_ij(t) for 1-based (i, j). Throws IndexOutOfRange.
std::vector<Complex> coherence(const Trajectory& tr, int i, int j);

struct ObservableSeries {
  std::vector<double> times;
  std::vector<std::vector<double>> populations;
  std::vector<double> purity;
  std::vector<double> entropy;
  std::vector<std::pair<int, int>> coherence_indices;
  std::vector<std::vector<Complex>> coherences;  // [pair][time]
};

/// Populations, purity and entropy (the last two from one eigendecomposition
/// per state) plus the requested coherences.
ObservableSeries observe(const Trajectory& tr, std::span<const std::pair<int, int>> coherence_indices = {});

}  // namespace lindblad_pc
