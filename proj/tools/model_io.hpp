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

// File formats used by the command-line tool: JSON model files, initial
// state specs and trajectory CSV.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lindblad_pc/errors.hpp"
#include "lindblad_pc/model.hpp"
#include "lindblad_pc/observables.hpp"

namespace lindblad_pc::cli {

/// Thrown for malformed files and specs; maps to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

struct ModelFile {
  LindbladModel model;
  std::optional<CMatrix> initial_state;
};

/// {"dimension", "hamiltonian": {"diagonal"|"matrix"}, "jumps": [{"from","to"|"matrix","rate"}],
///  "params": {name: real}, "initial_state"?: {"diagonal"|"matrix"}}.
/// `overrides` replace or add entries of "params".
ModelFile parse_model_file(std::string_view json_text, const ParamMap& overrides = {});
ModelFile load_model_file(const std::filesystem::path& path, const ParamMap& overrides = {});

/// Serializes a model so that parse_model_file reproduces identical rates.
std::string emit_model_file(const LindbladModel& model, const std::optional<CMatrix>& initial_state = {});

/// diag:a,b,... | pure:k | file:path | phase:i,j[,k...]:phi_j[,phi_k...]
CMatrix parse_initial_state(std::string_view spec, int dimension);

/// Splits "a=1,f1=sin(t)^2" at top-level commas into key/value pairs.
std::vector<std::pair<std::string, std::string>> split_params(std::string_view text);

/// Parses "1,3" or "1,3;2,1" into 1-based index pairs.
std::vector<std::pair<int, int>> parse_coherences(std::string_view text);

/// t,p_1..p_d,purity,entropy[,re_ij,im_ij...], LF endings, 15 significant digits.
void write_trajectory_csv(std::ostream& out, const ObservableSeries& series);

std::string format_real(double v);

}  // namespace lindblad_pc::cli
