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

#include <span>
#include <vector>

#include "lindblad_pc/linalg.hpp"
#include "lindblad_pc/model.hpp"

namespace lindblad_pc {

enum class Method { ClosedForm, OdeOracle };

const char* method_name(Method m) noexcept;

struct Trajectory {
  std::vector<double> times;
  std::vector<CMatrix> states;
  Method method = Method::ClosedForm;

  std::size_t size() const noexcept { return times.size(); }
};

/// steps + 1 equally spaced points on [0, t_max].
std::vector<double> uniform_grid(double t_max, int steps);

/// rho(t) = unvec(expm(B(t)) vec(rho0)) at each grid time.
///
/// Admissibility of rho0 is not checked: the formula is evaluated as is,
/// which is what negative controls rely on.
Trajectory propagate_closed_form(const GeneratorDecomposition& g, const CMatrix& rho0,
                                 std::span<const double> grid);

inline constexpr double kOracleTolerance = 1e-10;

/// Dormand-Prince 5(4) integration of vec(rho)' = L(t) vec(rho) from t = 0,
/// with continuous extension onto the grid. Uses only generator_at.
/// Throws StepSizeUnderflow.
Trajectory ode_oracle(const GeneratorDecomposition& g, const CMatrix& rho0, std::span<const double> grid,
                      double tol = kOracleTolerance);

/// max over the grid of ||d/dt[expm(B(t)) alpha] - L(t) expm(B(t)) alpha|| / ||alpha||,
/// the derivative taken by central differences with step 1e-5 * local spacing.
double fedorov_residual(const GeneratorDecomposition& g, const CVector& alpha, std::span<const double> grid);

/// (1/2) ||a - b||_1 (sum of singular values).
double trace_distance(const CMatrix& a, const CMatrix& b);

/// Max trace distance over two trajectories on the same grid. Throws GridMismatch.
double compare(const Trajectory& a, const Trajectory& b);

struct TrajectoryHealth {
  double max_trace_error = 0.0;        // max |Tr rho - 1|
  double max_hermiticity_error = 0.0;  // max |rho - rho^dag|
  double min_eigenvalue = 0.0;         // over all states
};

TrajectoryHealth check_trajectory(const Trajectory& tr);

}  // namespace lindblad_pc
