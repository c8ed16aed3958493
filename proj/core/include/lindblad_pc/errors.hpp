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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lindblad_pc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed rate expression. `position` is a byte offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected,
              const std::string& found);

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

class UnboundParameter : public Error {
 public:
  explicit UnboundParameter(std::string name);
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class NonFinite : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownModel : public Error {
 public:
  explicit UnknownModel(const std::string& name);
};

class InvalidModel : public Error {
 public:
  using Error::Error;
};

/// Raised when a matrix fails one of the density-matrix invariants.
class NotADensityMatrix : public Error {
 public:
  enum class Violation { Shape, Hermiticity, Trace, Positivity };

  NotADensityMatrix(Violation violation, const std::string& detail);
  Violation violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

class StepSizeUnderflow : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

}  // namespace lindblad_pc
