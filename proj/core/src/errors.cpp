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

#include "lindblad_pc/errors.hpp"

#include <utility>

namespace lindblad_pc {
namespace {

std::string describe_syntax(std::size_t position, const std::vector<std::string>& expected,
                            const std::string& found) {
  std::string msg = "syntax error at position " + std::to_string(position) + ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) msg += (i + 1 == expected.size()) ? " or " : ", ";
    msg += expected[i];
  }
  msg += ", found " + found;
  return msg;
}

const char* violation_name(NotADensityMatrix::Violation v) {
  switch (v) {
    case NotADensityMatrix::Violation::Shape: return "shape";
    case NotADensityMatrix::Violation::Hermiticity: return "hermiticity";
    case NotADensityMatrix::Violation::Trace: return "trace";
    case NotADensityMatrix::Violation::Positivity: return "positivity";
  }
  return "unknown";
}

}  // namespace

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected,
                         const std::string& found)
    : Error(describe_syntax(position, expected, found)),
      position_(position),
      expected_(std::move(expected)) {}

UnboundParameter::UnboundParameter(std::string name)
    : Error("unbound parameter '" + name + "'"), name_(std::move(name)) {}

UnknownModel::UnknownModel(const std::string& name)
    : Error("unknown built-in model '" + name + "' (expected v3, cascade3, lambda3 or cascade4)") {}

NotADensityMatrix::NotADensityMatrix(Violation violation, const std::string& detail)
    : Error(std::string("not a density matrix (") + violation_name(violation) + "): " + detail),
      violation_(violation) {}

}  // namespace lindblad_pc
