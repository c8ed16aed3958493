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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lindblad_pc/expr.hpp"
#include "lindblad_pc/linalg.hpp"

namespace lindblad_pc {

/// A jump operator V_k with its rate gamma_k(t).
struct Jump {
  CMatrix op;
  RateExpr rate;
  /// Set when op is the transition matrix E_{to,from} = |to><from| (1-based levels).
  int from = 0;
  int to = 0;

  bool is_transition() const noexcept { return from > 0 && to > 0; }
};

/// H constant and Hermitian, V_k constant, gamma_k(t) scalar functions of time.
struct LindbladModel {
  std::string name;
  int dimension = 0;
  CMatrix hamiltonian;
  std::vector<Jump> jumps;

  /// Throws InvalidModel when dimensions disagree or H is not Hermitian (1e-12).
  void validate() const;
};

/// |to><from| in dimension d, levels 1-based.
CMatrix transition(int to, int from, int d);

Jump transition_jump(int to, int from, int d, RateExpr rate);

/// i (H^T (x) 1 - 1 (x) H): the vectorized -i[H, .].
CMatrix drift_matrix(const CMatrix& hamiltonian);

/// conj(V) (x) V - 1/2 1 (x) V^dag V - 1/2 V^T conj(V) (x) 1.
CMatrix dissipator_matrix(const CMatrix& jump);

struct DissipativePart {
  CMatrix dissipator;
  RateExpr rate;
  Antiderivative integral;
};

/// L(t) = L_H + sum_k gamma_k(t) L^(k) and its exact integral
/// B(t) = t L_H + sum_k Gamma_k(t) L^(k).
class GeneratorDecomposition {
 public:
  GeneratorDecomposition(int dimension, CMatrix drift, std::vector<DissipativePart> parts);

  int dimension() const noexcept { return dimension_; }
  Index superdimension() const noexcept { return drift_.rows(); }
  const CMatrix& drift() const noexcept { return drift_; }
  const std::vector<DissipativePart>& parts() const noexcept { return parts_; }

  CMatrix generator_at(double t) const;
  CMatrix integral_at(double t) const;

 private:
  int dimension_;
  CMatrix drift_;
  std::vector<DissipativePart> parts_;
};

GeneratorDecomposition assemble(const LindbladModel& model);

CMatrix generator_at(const GeneratorDecomposition& g, double t);
CMatrix integral_at(const GeneratorDecomposition& g, double t);

/// Raw builtin parameters: numeric values (w, e, e1, e2, e3) and, for
/// lambda3, rate expressions f1 and f2.
using BuiltinParams = std::map<std::string, std::string, std::less<>>;

/// One of v3, cascade3, lambda3, cascade4. Throws UnknownModel, InvalidModel
/// for unknown keys or bad numbers, and UnboundParameter from rate expressions.
LindbladModel builtin(std::string_view name, const BuiltinParams& params = {});

std::vector<std::string> builtin_names();

}  // namespace lindblad_pc
