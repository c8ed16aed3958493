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

#include "lindblad_pc/commutativity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "lindblad_pc/errors.hpp"

namespace lindblad_pc {
namespace {

double relative_commutator(const CMatrix& a, const CMatrix& b) {
  const double scale = a.norm() * b.norm();
  if (scale == 0.0) return 0.0;
  return commutator(a, b).norm() / scale;
}

std::vector<double> sorted_copy(std::span<const double> times) {
  std::vector<double> s(times.begin(), times.end());
  std::sort(s.begin(), s.end());
  return s;
}

void require_positive_distinct(std::span<const double> times, std::size_t minimum, const char* what) {
  const auto s = sorted_copy(times);
  std::size_t count = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i])) throw NonFinite(std::string(what) + ": sample time is not finite");
    if (s[i] <= 0.0) throw Error(std::string(what) + ": sample times must be positive");
    if (i == 0 || s[i] != s[i - 1]) ++count;
  }
  if (count < minimum) {
    throw Error(std::string(what) + ": needs at least " + std::to_string(minimum) + " distinct sample times");
  }
}

// Basis vectors stay in the kernel of [L(t), B^n(t)] up to this residual.
double fedorov_residual_at(const GeneratorDecomposition& g, double t, int power_cap, const CMatrix& basis) {
  if (basis.cols() == 0) return 0.0;
  const CMatrix l = g.generator_at(t);
  const CMatrix b = g.integral_at(t);
  CMatrix bn = CMatrix::Identity(b.rows(), b.cols());
  double worst = 0.0;
  for (int n = 1; n <= power_cap; ++n) {
    bn = bn * b;
    const double norm = bn.norm();
    if (norm == 0.0) break;
    bn /= norm;
    const CMatrix r = (l * bn - bn * l) * basis;
    worst = std::max(worst, r.colwise().norm().maxCoeff());
  }
  return worst;
}

}  // namespace

std::vector<double> default_sample_times(double time_scale) {
  std::vector<double> times = {0.1, 0.5, 1.0, 2.0, std::numbers::pi, 5.0, 8.0};
  std::mt19937_64 rng(42);
  for (int i = 0; i < 5; ++i) {
    // Top 53 bits as a uniform double in [0, 1), independent of the
    // standard library's distribution implementation.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    times.push_back(0.05 + 7.9 * u);
  }
  for (double& t : times) t *= time_scale;
  return times;
}

FunctionalCommutativity functional_commutativity_detail(const GeneratorDecomposition& g,
                                                        std::span<const double> times, double tol) {
  if (times.size() < 2) throw Error("functional commutativity needs at least two sample times");
  FunctionalCommutativity out;
  std::vector<const CMatrix*> components{&g.drift()};
  for (const auto& p : g.parts()) components.push_back(&p.dissipator);
  for (std::size_t i = 0; i < components.size(); ++i) {
    for (std::size_t j = i + 1; j < components.size(); ++j) {
      out.component_residual = std::max(out.component_residual, relative_commutator(*components[i], *components[j]));
    }
  }
  std::vector<CMatrix> generators;
  generators.reserve(times.size());
  for (double t : times) generators.push_back(g.generator_at(t));
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      out.sample_residual = std::max(out.sample_residual, relative_commutator(generators[i], generators[j]));
    }
  }
  out.components_commute = out.component_residual <= tol;
  out.samples_commute = out.sample_residual <= tol;
  return out;
}

bool functional_commutativity(const GeneratorDecomposition& g, std::span<const double> times, double tol) {
  return functional_commutativity_detail(g, times, tol).holds();
}

bool integral_commutativity(const GeneratorDecomposition& g, std::span<const double> times, double tol) {
  for (double t : times) {
    if (relative_commutator(g.generator_at(t), g.integral_at(t)) > tol) return false;
  }
  return true;
}

CMatrix gamma_operator(const GeneratorDecomposition& g, double t, int power_cap) {
  if (!(t > 0.0)) throw Error("gamma_operator needs t > 0");
  if (power_cap < 1) throw Error("gamma_operator needs power_cap >= 1");
  const CMatrix l = g.generator_at(t);
  const CMatrix b = g.integral_at(t);
  const Index mu = l.rows();
  CMatrix gamma = CMatrix::Zero(mu, mu);
  CMatrix bn = CMatrix::Identity(mu, mu);
  for (int n = 1; n <= power_cap; ++n) {
    bn = bn * b;
    const double norm = bn.norm();
    if (norm == 0.0) break;
    bn /= norm;
    const CMatrix c = l * bn - bn * l;
    gamma.noalias() += c.adjoint() * c;
  }
  if (!all_finite(gamma)) throw NonFinite("gamma_operator produced non-finite entries");
  return 0.5 * (gamma + gamma.adjoint());
}

int power_cap_for(const GeneratorDecomposition& g, std::span<const double> times, double rel_tol) {
  const auto mu = static_cast<int>(g.superdimension());
  if (times.empty()) return std::max(1, mu - 1);
  const auto s = sorted_copy(times);
  const double median = s[(s.size() - 1) / 2];
  const int degree = minimal_poly_degree(g.integral_at(median), rel_tol);
  return std::max(1, std::min(mu - 1, degree - 1));
}

PartialSubspace partial_subspace_detail(const GeneratorDecomposition& g, std::span<const double> times,
                                        double rel_tol) {
  require_positive_distinct(times, 3, "partial_subspace");
  PartialSubspace out;
  out.power_cap = power_cap_for(g, times, rel_tol);
  const Index mu = g.superdimension();
  CMatrix total = CMatrix::Zero(mu, mu);
  for (double t : times) total += gamma_operator(g, t, out.power_cap);
  out.basis = null_space(total, rel_tol);
  return out;
}

SubspaceBasis partial_subspace(const GeneratorDecomposition& g, std::span<const double> times, double rel_tol) {
  return partial_subspace_detail(g, times, rel_tol).basis;
}

void check_density_matrix(const CMatrix& rho, double tol) {
  using V = NotADensityMatrix::Violation;
  if (rho.rows() != rho.cols() || rho.rows() == 0) throw NotADensityMatrix(V::Shape, "matrix is not square");
  if (!all_finite(rho)) throw NotADensityMatrix(V::Shape, "matrix has non-finite entries");
  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol) throw NotADensityMatrix(V::Hermiticity, "max |rho - rho^dag| = " + std::to_string(asym));
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol) {
    throw NotADensityMatrix(V::Trace, "trace = " + std::to_string(tr.real()));
  }
  const CMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm, Eigen::EigenvaluesOnly);
  const double lowest = eig.eigenvalues()(0);
  if (lowest < -tol) throw NotADensityMatrix(V::Positivity, "min eigenvalue = " + std::to_string(lowest));
}

bool admissible(const CMatrix& rho, const SubspaceBasis& subspace, double tol) {
  check_density_matrix(rho, tol);
  return subspace.distance(vec(rho)) <= tol;
}

std::optional<std::vector<MatrixEntry>> excluded_entries(const SubspaceBasis& subspace, int dimension,
                                                         double tol) {
  const Index mu = subspace.ambient;
  if (static_cast<Index>(dimension) * dimension != mu) throw DimensionMismatch("subspace is not over d^2");
  std::vector<MatrixEntry> out;
  if (subspace.is_full()) return out;
  const CMatrix complement = CMatrix::Identity(mu, mu) - subspace.projector();
  CMatrix axes = CMatrix::Zero(mu, mu);
  for (Index c = 0; c < mu; ++c) {
    const double w = complement(c, c).real();
    if (std::abs(w - 1.0) <= tol) {
      axes(c, c) = 1.0;
      out.push_back(MatrixEntry{static_cast<int>(c % dimension) + 1, static_cast<int>(c / dimension) + 1, c + 1});
    } else if (std::abs(w) > tol) {
      return std::nullopt;
    }
  }
  if ((complement - axes).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  if (static_cast<Index>(out.size()) != mu - subspace.rank()) return std::nullopt;
  return out;
}

std::string entry_label(const MatrixEntry& e) {
  return "ρ_" + std::to_string(e.row) + std::to_string(e.col);
}

std::string CommutativityReport::describe_subspace() const {
  if (subspace.is_full()) return "full (dim " + std::to_string(partial_rank) + ")";
  std::string s = "dim " + std::to_string(partial_rank);
  if (excluded && !excluded->empty()) {
    s += "; admissible states satisfy ";
    for (std::size_t i = 0; i < excluded->size(); ++i) {
      if (i > 0) s += " and ";
      s += entry_label((*excluded)[i]) + " = 0";
    }
  } else {
    s += "; complement is not coordinate-aligned";
  }
  return s;
}

CommutativityReport classify(const GeneratorDecomposition& g, std::span<const double> times, double rel_tol) {
  CommutativityReport r;
  r.sample_times.assign(times.begin(), times.end());
  r.functional_detail = functional_commutativity_detail(g, times, rel_tol);
  r.functional = r.functional_detail.holds();
  r.integral = integral_commutativity(g, times, rel_tol);

  auto partial = partial_subspace_detail(g, times, rel_tol);
  r.subspace = std::move(partial.basis);
  r.power_cap = partial.power_cap;
  r.partial_rank = r.subspace.rank();

  const double horizon = *std::max_element(times.begin(), times.end());
  const std::size_t dense = 10 * times.size();
  r.verification_times.reserve(dense);
  for (std::size_t k = 1; k <= dense; ++k) {
    r.verification_times.push_back(horizon * static_cast<double>(k) / static_cast<double>(dense));
  }
  for (double t : r.verification_times) {
    r.residual_max = std::max(r.residual_max, fedorov_residual_at(g, t, r.power_cap, r.subspace.columns));
  }
  r.excluded = excluded_entries(r.subspace, g.dimension());
  return r;
}

}  // namespace lindblad_pc
