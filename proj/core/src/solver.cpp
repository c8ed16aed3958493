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

#include "lindblad_pc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <exception>
#include <thread>

#include "lindblad_pc/errors.hpp"

namespace lindblad_pc {
namespace {

void require_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error("time grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw NonFinite("time grid has a non-finite entry");
    if (grid[i] < 0.0) throw Error("time grid must be non-negative");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw Error("time grid must be strictly increasing");
  }
}

void require_state(const GeneratorDecomposition& g, const CMatrix& rho0) {
  if (rho0.rows() != g.dimension() || rho0.cols() != g.dimension()) {
    throw DimensionMismatch("initial state is " + std::to_string(rho0.rows()) + "x" +
                            std::to_string(rho0.cols()) + ", model has d = " + std::to_string(g.dimension()));
  }
  if (!all_finite(rho0)) throw NonFinite("initial state has non-finite entries");
}

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LINDBLAD_PC_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, jobs / 16)));
}

// Runs body(i) for i in [0, n); each index is handled by exactly one worker.
template <class Body>
void parallel_for(std::size_t n, Body body) {
  const unsigned workers = worker_count(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

double scaled_norm(const CVector& err, const CVector& y0, const CVector& y1, double tol) {
  double sum = 0.0;
  for (Index i = 0; i < err.size(); ++i) {
    const double sc = tol + tol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    const double r = std::abs(err(i)) / sc;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(err.size()));
}

}  // namespace

const char* method_name(Method m) noexcept {
  return m == Method::ClosedForm ? "closed-form" : "ode-oracle";
}

std::vector<double> uniform_grid(double t_max, int steps) {
  if (steps < 1) throw Error("grid needs at least one step");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw Error("grid end time must be positive and finite");
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) grid[static_cast<std::size_t>(i)] = t_max * i / steps;
  return grid;
}

Trajectory propagate_closed_form(const GeneratorDecomposition& g, const CMatrix& rho0,
                                 std::span<const double> grid) {
  require_grid(grid);
  require_state(g, rho0);
  Trajectory tr;
  tr.method = Method::ClosedForm;
  tr.times.assign(grid.begin(), grid.end());
  tr.states.resize(grid.size());
  const CVector alpha = vec(rho0);
  const Index d = g.dimension();
  parallel_for(grid.size(), [&](std::size_t i) {
    tr.states[i] = unvec(expm(g.integral_at(grid[i])) * alpha, d);
  });
  return tr;
}

Trajectory ode_oracle(const GeneratorDecomposition& g, const CMatrix& rho0, std::span<const double> grid,
                      double tol) {
  require_grid(grid);
  require_state(g, rho0);
  if (!(tol > 0.0)) throw Error("oracle tolerance must be positive");
  Trajectory tr;
  tr.method = Method::OdeOracle;
  tr.times.assign(grid.begin(), grid.end());
  tr.states.reserve(grid.size());

  const Index d = g.dimension();
  const auto rhs = [&](double t, const CVector& y) -> CVector { return g.generator_at(t) * y; };

  double t = 0.0;
  CVector y = vec(rho0);
  std::size_t next = 0;
  while (next < grid.size() && grid[next] <= t) {
    tr.states.push_back(unvec(y, d));
    ++next;
  }
  if (next == grid.size()) return tr;

  const double t_end = grid.back();
  CVector k1 = rhs(t, y);
  double h = 1e-6;
  {
    const double y_norm = scaled_norm(y, y, y, tol);
    const double f_norm = scaled_norm(k1, y, y, tol);
    if (y_norm > 1e-5 && f_norm > 1e-5) h = 0.01 * y_norm / f_norm;
    h = std::min(h, t_end - t);
  }

  bool last_rejected = false;
  constexpr long kMaxSteps = 50'000'000;
  for (long step = 0; next < grid.size(); ++step) {
    if (step > kMaxSteps) throw StepSizeUnderflow("oracle exceeded the maximum number of steps");
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      throw StepSizeUnderflow("oracle step size underflow at t = " + std::to_string(t));
    }
    if (t + h > t_end) h = t_end - t;

    const CVector k2 = rhs(t + c2 * h, y + h * (a21 * k1));
    const CVector k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const CVector k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const CVector k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const CVector k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const CVector y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const double t_new = (t + h >= t_end) ? t_end : t + h;
    const CVector k7 = rhs(t_new, y_new);
    const CVector err_vec = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double err = scaled_norm(err_vec, y, y_new, tol);
    if (!std::isfinite(err)) throw NonFinite("oracle produced a non-finite state");

    if (err <= 1.0) {
      const CVector ydiff = y_new - y;
      const CVector bspl = h * k1 - ydiff;
      const CVector r4 = ydiff - h * k7 - bspl;
      const CVector r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      while (next < grid.size() && grid[next] <= t_new) {
        if (grid[next] == t_new) {
          tr.states.push_back(unvec(y_new, d));
        } else {
          const double theta = (grid[next] - t) / h;
          const double theta1 = 1.0 - theta;
          const CVector yi = y + theta * (ydiff + theta1 * (bspl + theta * (r4 + theta1 * r5)));
          tr.states.push_back(unvec(yi, d));
        }
        ++next;
      }
      t = t_new;
      y = y_new;
      k1 = k7;
      const double factor = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, last_rejected ? 1.0 : 5.0);
      h *= factor;
      last_rejected = false;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      last_rejected = true;
    }
  }
  return tr;
}

double fedorov_residual(const GeneratorDecomposition& g, const CVector& alpha, std::span<const double> grid) {
  require_grid(grid);
  if (alpha.size() != g.superdimension()) throw DimensionMismatch("alpha must have length d^2");
  const double alpha_norm = alpha.norm();
  if (!std::isfinite(alpha_norm)) throw NonFinite("alpha is not finite");
  if (alpha_norm == 0.0) return 0.0;

  const auto state = [&](double t) -> CVector { return expm(g.integral_at(t)) * alpha; };
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double spacing = std::numeric_limits<double>::infinity();
    if (i > 0) spacing = std::min(spacing, grid[i] - grid[i - 1]);
    if (i + 1 < grid.size()) spacing = std::min(spacing, grid[i + 1] - grid[i]);
    if (!std::isfinite(spacing)) spacing = 1.0;
    const double h = 1e-5 * spacing;
    const double t = grid[i];
    CVector derivative;
    if (t - h >= 0.0) {
      derivative = (state(t + h) - state(t - h)) / (2.0 * h);
    } else {
      derivative = (-3.0 * state(t) + 4.0 * state(t + h) - state(t + 2.0 * h)) / (2.0 * h);
    }
    const CVector r = derivative - g.generator_at(t) * state(t);
    worst = std::max(worst, r.norm());
  }
  return worst / alpha_norm;
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("trace_distance: shape mismatch");
  Eigen::JacobiSVD<CMatrix> svd(a - b);
  return 0.5 * svd.singularValues().sum();
}

double compare(const Trajectory& a, const Trajectory& b) {
  if (a.times.size() != b.times.size() || a.states.size() != b.states.size() ||
      a.states.size() != a.times.size()) {
    throw GridMismatch("trajectories have different grid sizes");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    if (std::abs(a.times[i] - b.times[i]) > 1e-12 * std::max(1.0, std::abs(a.times[i]))) {
      throw GridMismatch("trajectory grids differ at index " + std::to_string(i));
    }
    worst = std::max(worst, trace_distance(a.states[i], b.states[i]));
  }
  return worst;
}

TrajectoryHealth check_trajectory(const Trajectory& tr) {
  TrajectoryHealth h;
  h.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const CMatrix& rho : tr.states) {
    h.max_trace_error = std::max(h.max_trace_error, std::abs(rho.trace() - Complex(1.0, 0.0)));
    h.max_hermiticity_error = std::max(h.max_hermiticity_error, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    h.min_eigenvalue = std::min(h.min_eigenvalue, eig.eigenvalues()(0));
  }
  if (tr.states.empty()) h.min_eigenvalue = 0.0;
  return h;
}

}  // namespace lindblad_pc
