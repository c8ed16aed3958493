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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lindblad_pc/commutativity.hpp"
#include "lindblad_pc/errors.hpp"
#include "lindblad_pc/model.hpp"
#include "lindblad_pc/observables.hpp"
#include "lindblad_pc/solver.hpp"
#include "model_io.hpp"

namespace lindblad_pc::cli {
namespace {

// Projection tolerance for the admissibility gate; density invariants are
// checked more loosely so that hand-typed states such as 0.333333 pass.
constexpr double kAdmissibilityTol = 1e-8;
constexpr double kDensityTol = 1e-6;

struct ModelOptions {
  std::string path;
  std::string builtin;
  std::vector<std::string> params;
  std::string emit_model;
};

struct TrajectoryOptions {
  std::string rho0;
  double t_max = 20.0;
  int steps = 400;
  bool force = false;
};

struct Loaded {
  LindbladModel model;
  std::optional<CMatrix> initial_state;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void add_model_options(CLI::App& sub, ModelOptions& m) {
  sub.add_option("model", m.path, "JSON model file");
  sub.add_option("--builtin", m.builtin, "Built-in model: v3, cascade3, lambda3, cascade4");
  sub.add_option("--params", m.params, "Parameters as k=v[,k=v...]; may repeat");
  sub.add_option("--emit-model", m.emit_model, "Also write the resolved model as a JSON model file");
}

void add_trajectory_options(CLI::App& sub, TrajectoryOptions& t) {
  sub.add_option("--rho0", t.rho0, "Initial state: diag:a,b,..  pure:k  file:path  phase:i,j[,k]:phi[,phi]");
  sub.add_option("--t-max", t.t_max, "End of the time grid")->capture_default_str();
  sub.add_option("--steps", t.steps, "Number of grid intervals")->capture_default_str();
  sub.add_flag("--force", t.force, "Propagate even if the initial state is not admissible");
}

Loaded load(const ModelOptions& m) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const std::string& p : m.params) {
    for (auto& kv : split_params(p)) pairs.push_back(std::move(kv));
  }
  if (m.path.empty() == m.builtin.empty()) {
    throw InputError("give exactly one of a model file or --builtin");
  }
  Loaded out;
  if (!m.builtin.empty()) {
    BuiltinParams bp;
    for (auto& [k, v] : pairs) bp[k] = v;
    out.model = builtin(m.builtin, bp);
  } else {
    ParamMap overrides;
    for (const auto& [k, v] : pairs) {
      double x = 0.0;
      const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
      if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw InputError("parameter '" + k + "' for a model file must be a number");
      }
      overrides[k] = x;
    }
    ModelFile file = load_model_file(m.path, overrides);
    out.model = std::move(file.model);
    out.initial_state = std::move(file.initial_state);
  }
  if (!m.emit_model.empty()) {
    std::ofstream f(m.emit_model, std::ios::binary);
    if (!f) throw InputError("cannot write " + m.emit_model);
    f << emit_model_file(out.model, out.initial_state);
  }
  return out;
}

CMatrix initial_state(const TrajectoryOptions& t, const Loaded& loaded) {
  CMatrix rho;
  if (!t.rho0.empty()) {
    rho = parse_initial_state(t.rho0, loaded.model.dimension);
  } else if (loaded.initial_state) {
    rho = *loaded.initial_state;
  } else {
    throw InputError("--rho0 is required (the model has no initial_state)");
  }
  try {
    check_density_matrix(rho, kDensityTol);
  } catch (const NotADensityMatrix& e) {
    throw InputError(std::string("initial state: ") + e.what());
  }
  return rho;
}

std::vector<double> grid_for(const TrajectoryOptions& t) {
  if (!(std::isfinite(t.t_max) && t.t_max > 0.0)) throw InputError("--t-max must be positive");
  if (t.steps < 1) throw InputError("--steps must be at least 1");
  return uniform_grid(t.t_max, t.steps);
}

std::string value_label(Complex z) {
  std::ostringstream s;
  if (z.imag() == 0.0) {
    s << z.real();
  } else {
    s << "(" << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i)";
  }
  return s.str();
}

// Returns false and explains why when rho lies outside M.
bool gate(const CommutativityReport& report, const CMatrix& rho, bool force, std::ostream& err) {
  const double distance = report.subspace.distance(vec(rho));
  if (distance <= kAdmissibilityTol * std::max(1.0, rho.norm())) return true;
  std::string why = "initial state is not admissible: M is " + report.describe_subspace();
  if (report.excluded) {
    for (const MatrixEntry& e : *report.excluded) {
      const Complex v = rho(e.row - 1, e.col - 1);
      if (std::abs(v) > kAdmissibilityTol) {
        why += ", but " + entry_label(e) + " = " + value_label(v) + " ≠ 0";
        break;
      }
    }
  } else {
    why += "; distance from M is " + sci(distance);
  }
  err << (force ? "warning: " : "error: ") << why << '\n';
  if (force) {
    err << "warning: propagating anyway (--force); the result need not solve the master equation\n";
    return true;
  }
  err << "use --force to propagate anyway\n";
  return false;
}

void print_report(std::ostream& out, const LindbladModel& model, const CommutativityReport& r, double tol) {
  out << "model: " << model.name << " (d = " << model.dimension << ")\n";
  out << "functional: " << yes_no(r.functional) << ", integral: " << yes_no(r.integral)
      << ", M: " << r.describe_subspace() << '\n';
  out << "components commute: " << yes_no(r.functional_detail.components_commute) << " (residual "
      << sci(r.functional_detail.component_residual) << "), samples commute: "
      << yes_no(r.functional_detail.samples_commute) << " (residual " << sci(r.functional_detail.sample_residual)
      << ")\n";
  out << "partial rank: " << r.partial_rank << " of " << r.subspace.ambient << '\n';
  out << "power cap: " << r.power_cap << '\n';
  out << "residual_max: " << sci(r.residual_max)
      << (r.residual_max <= kFedorovResidualBound ? " (verified" : " (NOT verified") << ", bound "
      << sci(kFedorovResidualBound) << ", " << r.verification_times.size() << " points)\n";
  out << "tolerance: " << sci(tol) << '\n';
}

void print_report_json(std::ostream& out, const LindbladModel& model, const CommutativityReport& r, double tol) {
  nlohmann::json j;
  j["model"] = model.name;
  j["dimension"] = model.dimension;
  j["functional"] = r.functional;
  j["integral"] = r.integral;
  j["components_commute"] = r.functional_detail.components_commute;
  j["component_residual"] = r.functional_detail.component_residual;
  j["samples_commute"] = r.functional_detail.samples_commute;
  j["sample_residual"] = r.functional_detail.sample_residual;
  j["partial_rank"] = r.partial_rank;
  j["ambient_dimension"] = r.subspace.ambient;
  j["subspace"] = r.describe_subspace();
  if (r.excluded) {
    nlohmann::json entries = nlohmann::json::array();
    for (const MatrixEntry& e : *r.excluded) {
      entries.push_back({{"row", e.row}, {"col", e.col}, {"coordinate", e.coordinate}});
    }
    j["excluded"] = entries;
  } else {
    j["excluded"] = nullptr;
  }
  j["power_cap"] = r.power_cap;
  j["residual_max"] = r.residual_max;
  j["residual_verified"] = r.residual_max <= kFedorovResidualBound;
  j["sample_times"] = r.sample_times;
  j["tolerance"] = tol;
  out << j.dump(2) << '\n';
}

int cmd_classify(const ModelOptions& m, double tol, bool as_json, std::ostream& out) {
  const Loaded loaded = load(m);
  const auto g = assemble(loaded.model);
  const auto report = classify(g, default_sample_times(), tol);
  if (as_json) {
    print_report_json(out, loaded.model, report, tol);
  } else {
    print_report(out, loaded.model, report, tol);
  }
  return kOk;
}

int cmd_solve(const ModelOptions& m, const TrajectoryOptions& t, const std::vector<std::string>& coherence_specs,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
  const Loaded loaded = load(m);
  const CMatrix rho0 = initial_state(t, loaded);
  const auto grid = grid_for(t);
  std::vector<std::pair<int, int>> indices;
  for (const std::string& spec : coherence_specs) {
    for (const auto& ij : parse_coherences(spec)) indices.push_back(ij);
  }
  const int d = loaded.model.dimension;
  for (const auto& [i, j] : indices) {
    if (i < 1 || i > d || j < 1 || j > d) throw InputError("coherence index outside [1, " + std::to_string(d) + "]");
  }
  const auto g = assemble(loaded.model);
  const auto report = classify(g, default_sample_times());
  if (!gate(report, rho0, t.force, err)) return kInadmissible;

  const auto series = observe(propagate_closed_form(g, rho0, grid), indices);
  if (out_path.empty()) {
    write_trajectory_csv(out, series);
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw InputError("cannot write " + out_path);
    write_trajectory_csv(f, series);
    if (!f) throw InputError("failed writing " + out_path);
  }
  return kOk;
}

int cmd_verify(const ModelOptions& m, const TrajectoryOptions& t, double tol, std::ostream& out,
               std::ostream& err) {
  const Loaded loaded = load(m);
  const CMatrix rho0 = initial_state(t, loaded);
  const auto grid = grid_for(t);
  const auto g = assemble(loaded.model);
  const auto report = classify(g, default_sample_times());
  if (!gate(report, rho0, t.force, err)) return kInadmissible;

  const Trajectory closed = propagate_closed_form(g, rho0, grid);
  const Trajectory oracle = ode_oracle(g, rho0, grid);
  const double distance = compare(closed, oracle);
  const double residual = fedorov_residual(g, vec(rho0), grid);
  const bool pass = distance <= tol && residual <= tol;
  out << "model: " << loaded.model.name << " (d = " << loaded.model.dimension << ")\n";
  out << "grid: [0, " << t.t_max << "], " << t.steps << " steps\n";
  out << "max trace distance (closed form vs oracle): " << sci(distance) << '\n';
  out << "fedorov residual: " << sci(residual) << '\n';
  out << "tolerance: " << sci(tol) << '\n';
  out << "verify: " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form solutions of time-dependent Lindblad equations", "lindblad-pc"};
  app.require_subcommand(1);

  ModelOptions classify_model, solve_model, verify_model;
  TrajectoryOptions solve_traj, verify_traj;
  double classify_tol = kDefaultRelTol;
  double verify_tol = 1e-6;
  bool as_json = false;
  std::vector<std::string> coherences;
  std::string out_path;

  CLI::App* classify_cmd = app.add_subcommand("classify", "Commutativity classes and the admissible subspace M");
  add_model_options(*classify_cmd, classify_model);
  classify_cmd->add_option("--tol", classify_tol, "Relative tolerance for commutators and ranks")
      ->capture_default_str();
  classify_cmd->add_flag("--json", as_json, "Print the report as JSON");

  CLI::App* solve_cmd = app.add_subcommand("solve", "Closed-form trajectory as CSV");
  add_model_options(*solve_cmd, solve_model);
  add_trajectory_options(*solve_cmd, solve_traj);
  solve_cmd->add_option("--coherences", coherences, "Coherences to output, e.g. 1,3 or \"1,3;2,1\"");
  solve_cmd->add_option("--out", out_path, "CSV output path (default: stdout)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "Compare the closed form against the ODE oracle");
  add_model_options(*verify_cmd, verify_model);
  add_trajectory_options(*verify_cmd, verify_traj);
  verify_cmd->add_option("--tol", verify_tol, "Pass threshold for distance and residual")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(classify_model, classify_tol, as_json, out);
    if (solve_cmd->parsed()) return cmd_solve(solve_model, solve_traj, coherences, out_path, out, err);
    return cmd_verify(verify_model, verify_traj, verify_tol, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const UnboundParameter& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const UnknownModel& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const InvalidModel& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const IndexOutOfRange& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace lindblad_pc::cli
