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

#include "lindblad_pc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lindblad_pc/errors.hpp"

namespace lindblad_pc {
namespace {

constexpr double kNegativeNoise = 1e-7;

double purity_from(const std::vector<double>& spectrum) {
  double s = 0.0;
  for (double l : spectrum) s += l * l;
  return s;
}

double entropy_from(const std::vector<double>& spectrum) {
  double s = 0.0;
  for (double l : spectrum) {
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

void require_index(const Trajectory& tr, int i, int j) {
  const Index d = tr.states.empty() ? 0 : tr.states.front().rows();
  if (i < 1 || j < 1 || i > d || j > d) {
    throw IndexOutOfRange("coherence index (" + std::to_string(i) + "," + std::to_string(j) +
                          ") outside [1, " + std::to_string(d) + "]");
  }
}

}  // namespace

std::vector<double> clamped_spectrum(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  std::vector<double> lambda(static_cast<std::size_t>(eig.eigenvalues().size()));
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    double l = eig.eigenvalues()(static_cast<Index>(k));
    if (l < -kNegativeNoise) {
      throw NotADensityMatrix(NotADensityMatrix::Violation::Positivity,
                              "eigenvalue " + std::to_string(l) + " below clamp threshold");
    }
    lambda[k] = std::clamp(l, 0.0, 1.0);
  }
  const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
  if (std::abs(total - 1.0) >= kNegativeNoise) {
    throw NotADensityMatrix(NotADensityMatrix::Violation::Trace,
                            "clamped spectrum sums to " + std::to_string(total));
  }
  for (double& l : lambda) l /= total;
  return lambda;
}

double state_purity(const CMatrix& rho) { return purity_from(clamped_spectrum(rho)); }

double von_neumann_entropy(const CMatrix& rho) { return entropy_from(clamped_spectrum(rho)); }

std::vector<std::vector<double>> populations(const Trajectory& tr) {
  std::vector<std::vector<double>> out;
  out.reserve(tr.states.size());
  for (const CMatrix& rho : tr.states) {
    std::vector<double> p(static_cast<std::size_t>(rho.rows()));
    for (Index i = 0; i < rho.rows(); ++i) p[static_cast<std::size_t>(i)] = rho(i, i).real();
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<double> purity(const Trajectory& tr) {
  std::vector<double> out;
  out.reserve(tr.states.size());
  for (const CMatrix& rho : tr.states) out.push_back(state_purity(rho));
  return out;
}

std::vector<double> entropy(const Trajectory& tr) {
  std::vector<double> out;
  out.reserve(tr.states.size());
  for (const CMatrix& rho : tr.states) out.push_back(von_neumann_entropy(rho));
  return out;
}

std::vector<Complex> coherence(const Trajectory& tr, int i, int j) {
  require_index(tr, i, j);
  std::vector<Complex> out;
  out.reserve(tr.states.size());
  for (const CMatrix& rho : tr.states) out.push_back(rho(i - 1, j - 1));
  return out;
}

ObservableSeries observe(const Trajectory& tr, std::span<const std::pair<int, int>> coherence_indices) {
  for (const auto& [i, j] : coherence_indices) require_index(tr, i, j);
  ObservableSeries s;
  s.times = tr.times;
  s.populations = populations(tr);
  s.purity.reserve(tr.states.size());
  s.entropy.reserve(tr.states.size());
  for (const CMatrix& rho : tr.states) {
    const auto spectrum = clamped_spectrum(rho);
    s.purity.push_back(purity_from(spectrum));
    s.entropy.push_back(entropy_from(spectrum));
  }
  s.coherence_indices.assign(coherence_indices.begin(), coherence_indices.end());
  for (const auto& [i, j] : coherence_indices) s.coherences.push_back(coherence(tr, i, j));
  return s;
}

}  // namespace lindblad_pc
