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

#include "model_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "lindblad_pc/errors.hpp"

namespace lindblad_pc::cli {
namespace {

using nlohmann::json;

double to_real(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
    throw InputError(std::string(what) + ": '" + std::string(text) + "' is not a finite number");
  }
  return v;
}

int to_int(std::string_view text, std::string_view what) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw InputError(std::string(what) + ": '" + std::string(text) + "' is not an integer");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Complex json_complex(const json& v, std::string_view where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw InputError(std::string(where) + ": matrix entries must be numbers or [re, im] pairs");
}

// {"diagonal": [...]} or {"matrix": [[...], ...]}
CMatrix json_matrix(const json& node, int d, std::string_view where) {
  if (!node.is_object()) throw InputError(std::string(where) + " must be an object");
  if (node.contains("diagonal")) {
    const json& diag = node.at("diagonal");
    if (!diag.is_array() || static_cast<int>(diag.size()) != d) {
      throw InputError(std::string(where) + ".diagonal must have " + std::to_string(d) + " entries");
    }
    CMatrix m = CMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = json_complex(diag[static_cast<std::size_t>(i)], where);
    return m;
  }
  if (node.contains("matrix")) {
    const json& rows = node.at("matrix");
    if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
      throw InputError(std::string(where) + ".matrix must have " + std::to_string(d) + " rows");
    }
    CMatrix m(d, d);
    for (int i = 0; i < d; ++i) {
      const json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != d) {
        throw InputError(std::string(where) + ".matrix row " + std::to_string(i + 1) + " must have " +
                         std::to_string(d) + " entries");
      }
      for (int j = 0; j < d; ++j) m(i, j) = json_complex(row[static_cast<std::size_t>(j)], where);
    }
    return m;
  }
  throw InputError(std::string(where) + " needs a \"diagonal\" or \"matrix\" field");
}

json matrix_json(const CMatrix& m) {
  bool diagonal_real = true;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if ((i != j && m(i, j) != Complex(0.0, 0.0)) || m(i, j).imag() != 0.0) diagonal_real = false;
    }
  }
  if (diagonal_real) {
    json diag = json::array();
    for (Index i = 0; i < m.rows(); ++i) diag.push_back(m(i, i).real());
    return json{{"diagonal", diag}};
  }
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return json{{"matrix", rows}};
}

int level(const json& v, int d, std::string_view what) {
  if (!v.is_number_integer()) throw InputError(std::string(what) + " must be an integer level");
  const int k = v.get<int>();
  if (k < 1 || k > d) throw InputError(std::string(what) + " level " + std::to_string(k) + " outside [1, " + std::to_string(d) + "]");
  return k;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ModelFile parse_model_file(std::string_view json_text, const ParamMap& overrides) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("model file must be a JSON object");
  try {
    ModelFile out;
    LindbladModel& m = out.model;
    m.name = doc.value("name", std::string("file"));
    if (!doc.contains("dimension") || !doc.at("dimension").is_number_integer()) {
      throw InputError("model file needs an integer \"dimension\"");
    }
    m.dimension = doc.at("dimension").get<int>();
    if (m.dimension < 2 || m.dimension > 64) throw InputError("dimension must lie in [2, 64]");
    const int d = m.dimension;

    ParamMap params;
    if (doc.contains("params")) {
      const json& p = doc.at("params");
      if (!p.is_object()) throw InputError("\"params\" must be an object");
      for (const auto& [key, value] : p.items()) {
        if (!value.is_number()) throw InputError("parameter '" + key + "' must be a number");
        params[key] = value.get<double>();
      }
    }
    for (const auto& [key, value] : overrides) params[key] = value;

    if (!doc.contains("hamiltonian")) throw InputError("model file needs a \"hamiltonian\"");
    m.hamiltonian = json_matrix(doc.at("hamiltonian"), d, "hamiltonian");

    if (doc.contains("jumps")) {
      const json& jumps = doc.at("jumps");
      if (!jumps.is_array()) throw InputError("\"jumps\" must be an array");
      std::size_t k = 0;
      for (const json& j : jumps) {
        ++k;
        const std::string where = "jumps[" + std::to_string(k) + "]";
        if (!j.is_object() || !j.contains("rate") || !j.at("rate").is_string()) {
          throw InputError(where + " needs a \"rate\" expression string");
        }
        RateExpr rate = parse_rate_expr(j.at("rate").get<std::string>(), params);
        if (j.contains("matrix") || j.contains("diagonal")) {
          m.jumps.push_back(Jump{json_matrix(j, d, where), std::move(rate), 0, 0});
        } else if (j.contains("from") && j.contains("to")) {
          m.jumps.push_back(transition_jump(level(j.at("to"), d, where + ".to"),
                                            level(j.at("from"), d, where + ".from"), d, std::move(rate)));
        } else {
          throw InputError(where + " needs \"from\"/\"to\" levels or a \"matrix\"");
        }
      }
    }
    if (doc.contains("initial_state")) out.initial_state = json_matrix(doc.at("initial_state"), d, "initial_state");
    m.validate();
    return out;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed model file: ") + e.what());
  }
}

ModelFile load_model_file(const std::filesystem::path& path, const ParamMap& overrides) {
  return parse_model_file(read_file(path), overrides);
}

std::string emit_model_file(const LindbladModel& model, const std::optional<CMatrix>& initial_state) {
  json doc;
  doc["name"] = model.name;
  doc["dimension"] = model.dimension;
  doc["hamiltonian"] = matrix_json(model.hamiltonian);
  json jumps = json::array();
  for (const Jump& j : model.jumps) {
    json entry;
    if (j.is_transition()) {
      entry["from"] = j.from;
      entry["to"] = j.to;
    } else {
      const json op = matrix_json(j.op);
      for (const auto& [key, value] : op.items()) entry[key] = value;
    }
    entry["rate"] = j.rate.to_string();
    jumps.push_back(entry);
  }
  doc["jumps"] = jumps;
  doc["params"] = json::object();
  if (initial_state) doc["initial_state"] = matrix_json(*initial_state);
  return doc.dump(2) + "\n";
}

CMatrix parse_initial_state(std::string_view spec, int d) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) throw InputError("initial state spec needs a kind prefix (diag:, pure:, file:, phase:)");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view body = spec.substr(colon + 1);
  if (kind == "diag") {
    const auto parts = split(body, ',');
    if (static_cast<int>(parts.size()) != d) {
      throw InputError("diag: expects " + std::to_string(d) + " entries, got " + std::to_string(parts.size()));
    }
    CMatrix rho = CMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) rho(i, i) = to_real(trim(parts[static_cast<std::size_t>(i)]), "diag entry");
    return rho;
  }
  if (kind == "pure") {
    const int k = to_int(trim(body), "pure level");
    if (k < 1 || k > d) throw InputError("pure: level outside [1, " + std::to_string(d) + "]");
    CMatrix rho = CMatrix::Zero(d, d);
    rho(k - 1, k - 1) = 1.0;
    return rho;
  }
  if (kind == "file") {
    const std::string text = read_file(std::filesystem::path(std::string(body)));
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("initial state file is not valid JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("initial_state")) return json_matrix(doc.at("initial_state"), d, "initial_state");
    return json_matrix(doc, d, "initial state file");
  }
  if (kind == "phase") {
    // phase:1,3:phi  ->  psi = (|1> + e^{i phi}|3>)/sqrt(2)
    const std::size_t sep = body.find(':');
    if (sep == std::string_view::npos) throw InputError("phase: expects levels:phases, e.g. phase:1,3:3.14159");
    const auto levels = split(body.substr(0, sep), ',');
    const auto phases = split(body.substr(sep + 1), ',');
    if (levels.size() < 2) throw InputError("phase: needs at least two levels");
    if (phases.size() != levels.size() - 1) {
      throw InputError("phase: needs one phase per level after the first");
    }
    CVector psi = CVector::Zero(d);
    for (std::size_t k = 0; k < levels.size(); ++k) {
      const int lv = to_int(trim(levels[k]), "phase level");
      if (lv < 1 || lv > d) throw InputError("phase: level outside [1, " + std::to_string(d) + "]");
      if (psi(lv - 1) != Complex(0.0, 0.0)) throw InputError("phase: repeated level");
      const double phi = k == 0 ? 0.0 : to_real(trim(phases[k - 1]), "phase");
      psi(lv - 1) = std::polar(1.0, phi);
    }
    psi /= std::sqrt(static_cast<double>(levels.size()));
    return psi * psi.adjoint();
  }
  throw InputError("unknown initial state kind '" + std::string(kind) + "'");
}

std::vector<std::pair<std::string, std::string>> split_params(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  int depth = 0;
  std::size_t start = 0;
  const auto flush = [&](std::size_t end) {
    const std::string_view item = trim(text.substr(start, end - start));
    if (item.empty()) return;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) throw InputError("parameter '" + std::string(item) + "' is not key=value");
    out.emplace_back(std::string(trim(item.substr(0, eq))), std::string(trim(item.substr(eq + 1))));
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == ',' && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  flush(text.size());
  return out;
}

std::vector<std::pair<int, int>> parse_coherences(std::string_view text) {
  std::vector<std::pair<int, int>> out;
  for (std::string_view item : split(text, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto ij = split(item, ',');
    if (ij.size() != 2) throw InputError("coherence '" + std::string(item) + "' must be i,j");
    out.emplace_back(to_int(trim(ij[0]), "coherence row"), to_int(trim(ij[1]), "coherence column"));
  }
  return out;
}

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const ObservableSeries& s) {
  const std::size_t d = s.populations.empty() ? 0 : s.populations.front().size();
  std::string line = "t";
  for (std::size_t i = 1; i <= d; ++i) line += ",p_" + std::to_string(i);
  line += ",purity,entropy";
  for (const auto& [i, j] : s.coherence_indices) {
    const std::string ij = std::to_string(i) + std::to_string(j);
    line += ",re_" + ij + ",im_" + ij;
  }
  out << line << '\n';
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    line = format_real(s.times[k]);
    for (double p : s.populations[k]) line += "," + format_real(p);
    line += "," + format_real(s.purity[k]) + "," + format_real(s.entropy[k]);
    for (const auto& series : s.coherences) {
      line += "," + format_real(series[k].real()) + "," + format_real(series[k].imag());
    }
    out << line << '\n';
  }
}

}  // namespace lindblad_pc::cli
