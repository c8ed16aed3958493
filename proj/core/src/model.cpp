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

#include "lindblad_pc/model.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <utility>

#include "lindblad_pc/errors.hpp"

namespace lindblad_pc {

void LindbladModel::validate() const {
  if (dimension < 2) throw InvalidModel("model dimension must be at least 2");
  if (hamiltonian.rows() != dimension || hamiltonian.cols() != dimension) {
    throw InvalidModel("Hamiltonian is not " + std::to_string(dimension) + "x" + std::to_string(dimension));
  }
  if (!all_finite(hamiltonian)) throw InvalidModel("Hamiltonian has non-finite entries");
  if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidModel("Hamiltonian is not Hermitian");
  }
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    const CMatrix& v = jumps[k].op;
    if (v.rows() != dimension || v.cols() != dimension) {
      throw InvalidModel("jump operator " + std::to_string(k + 1) + " has the wrong size");
    }
    if (!all_finite(v)) throw InvalidModel("jump operator " + std::to_string(k + 1) + " is not finite");
  }
}

CMatrix transition(int to, int from, int d) {
  if (d < 1 || to < 1 || to > d || from < 1 || from > d) {
    throw IndexOutOfRange("transition levels must lie in [1, " + std::to_string(d) + "]");
  }
  CMatrix e = CMatrix::Zero(d, d);
  e(to - 1, from - 1) = 1.0;
  return e;
}

Jump transition_jump(int to, int from, int d, RateExpr rate) {
  return Jump{transition(to, from, d), std::move(rate), from, to};
}

CMatrix drift_matrix(const CMatrix& hamiltonian) {
  const Index d = hamiltonian.rows();
  const CMatrix ident = CMatrix::Identity(d, d);
  return Complex(0.0, 1.0) * (kron(hamiltonian.transpose(), ident) - kron(ident, hamiltonian));
}

CMatrix dissipator_matrix(const CMatrix& jump) {
  const Index d = jump.rows();
  const CMatrix ident = CMatrix::Identity(d, d);
  const CMatrix vdv = jump.adjoint() * jump;
  return kron(jump.conjugate(), jump) - 0.5 * kron(ident, vdv) - 0.5 * kron(vdv.transpose(), ident);
}

GeneratorDecomposition::GeneratorDecomposition(int dimension, CMatrix drift,
                                               std::vector<DissipativePart> parts)
    : dimension_(dimension), drift_(std::move(drift)), parts_(std::move(parts)) {
  const Index mu = static_cast<Index>(dimension) * dimension;
  if (drift_.rows() != mu || drift_.cols() != mu) throw DimensionMismatch("drift must be d^2 x d^2");
  for (const auto& p : parts_) {
    if (p.dissipator.rows() != mu || p.dissipator.cols() != mu) {
      throw DimensionMismatch("dissipator must be d^2 x d^2");
    }
  }
}

CMatrix GeneratorDecomposition::generator_at(double t) const {
  CMatrix l = drift_;
  for (const auto& p : parts_) l += eval_expr(p.rate, t) * p.dissipator;
  if (!all_finite(l)) throw NonFinite("generator is not finite at t = " + std::to_string(t));
  return l;
}

CMatrix GeneratorDecomposition::integral_at(double t) const {
  CMatrix b = t * drift_;
  for (const auto& p : parts_) b += p.integral(t) * p.dissipator;
  if (!all_finite(b)) throw NonFinite("generator integral is not finite at t = " + std::to_string(t));
  return b;
}

GeneratorDecomposition assemble(const LindbladModel& model) {
  model.validate();
  std::vector<DissipativePart> parts;
  parts.reserve(model.jumps.size());
  for (const auto& j : model.jumps) {
    parts.push_back(DissipativePart{dissipator_matrix(j.op), j.rate, antiderivative(j.rate)});
  }
  return GeneratorDecomposition(model.dimension, drift_matrix(model.hamiltonian), std::move(parts));
}

CMatrix generator_at(const GeneratorDecomposition& g, double t) { return g.generator_at(t); }
CMatrix integral_at(const GeneratorDecomposition& g, double t) { return g.integral_at(t); }

// ---------------------------------------------------------------------------
// Built-in models

namespace {

struct BuiltinSpec {
  std::set<std::string, std::less<>> numeric;
  std::set<std::string, std::less<>> expressions;
};

double parse_number(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
    throw InvalidModel("parameter '" + std::string(key) + "' is not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

ParamMap numeric_params(std::string_view model, const BuiltinParams& raw, const BuiltinSpec& spec) {
  ParamMap out;
  for (const auto& key : spec.numeric) out[key] = 1.0;
  for (const auto& [key, text] : raw) {
    if (spec.numeric.count(key)) {
      out[key] = parse_number(key, text);
    } else if (!spec.expressions.count(key)) {
      throw InvalidModel("unknown parameter '" + key + "' for built-in model " + std::string(model));
    }
  }
  return out;
}

void check_rates_nonnegative(const LindbladModel& m) {
  constexpr int kSamples = 401;
  constexpr double kHorizon = 20.0;
  for (const auto& j : m.jumps) {
    for (int i = 0; i < kSamples; ++i) {
      const double t = kHorizon * i / (kSamples - 1);
      if (eval_expr(j.rate, t) < 0.0) {
        throw InvalidModel("rate " + j.rate.to_string() + " is negative at t = " + std::to_string(t));
      }
    }
  }
}

CMatrix diagonal(std::initializer_list<double> entries) {
  CMatrix h = CMatrix::Zero(static_cast<Index>(entries.size()), static_cast<Index>(entries.size()));
  Index i = 0;
  for (double e : entries) {
    h(i, i) = e;
    ++i;
  }
  return h;
}

std::string expression_param(const BuiltinParams& raw, std::string_view key, std::string fallback) {
  const auto it = raw.find(key);
  return it == raw.end() ? fallback : it->second;
}

}  // namespace

std::vector<std::string> builtin_names() { return {"v3", "cascade3", "lambda3", "cascade4"}; }

LindbladModel builtin(std::string_view name, const BuiltinParams& params) {
  LindbladModel m;
  m.name = std::string(name);
  if (name == "v3") {
    const auto p = numeric_params(name, params, {{"w", "e1", "e3"}, {}});
    m.dimension = 3;
    m.hamiltonian = diagonal({p.at("e1"), 0.0, p.at("e3")});
    m.jumps.push_back(transition_jump(2, 1, 3, parse_rate_expr("sin(w*t)^2", p)));
    m.jumps.push_back(transition_jump(2, 3, 3, parse_rate_expr("cos(w*t)^2", p)));
  } else if (name == "cascade3") {
    const auto p = numeric_params(name, params, {{"w", "e"}, {}});
    m.dimension = 3;
    m.hamiltonian = diagonal({-p.at("e"), 0.0, p.at("e")});
    m.jumps.push_back(transition_jump(2, 3, 3, parse_rate_expr("sin(w*t)^2", p)));
    m.jumps.push_back(transition_jump(1, 2, 3, parse_rate_expr("cos(w*t)^2", p)));
  } else if (name == "lambda3") {
    const auto p = numeric_params(name, params, {{"w", "e1", "e3"}, {"f1", "f2"}});
    m.dimension = 3;
    m.hamiltonian = diagonal({-p.at("e1"), 0.0, -p.at("e3")});
    m.jumps.push_back(
        transition_jump(1, 2, 3, parse_rate_expr(expression_param(params, "f1", "sin(w*t)^2"), p)));
    m.jumps.push_back(
        transition_jump(3, 2, 3, parse_rate_expr(expression_param(params, "f2", "cos(w*t)^2"), p)));
  } else if (name == "cascade4") {
    const auto p = numeric_params(name, params, {{"w", "e1", "e2"}, {}});
    m.dimension = 4;
    m.hamiltonian = diagonal({-p.at("e2"), -p.at("e1"), p.at("e1"), p.at("e2")});
    m.jumps.push_back(transition_jump(3, 4, 4, parse_rate_expr("exp(-w*t)", p)));
    m.jumps.push_back(transition_jump(2, 3, 4, parse_rate_expr("sin(3*w*t)^2", p)));
    m.jumps.push_back(transition_jump(1, 2, 4, parse_rate_expr("sin(3*w*t)^2", p)));
  } else {
    throw UnknownModel(std::string(name));
  }
  m.validate();
  check_rates_nonnegative(m);
  return m;
}

}  // namespace lindblad_pc
