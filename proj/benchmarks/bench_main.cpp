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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "lindblad_pc/commutativity.hpp"
#include "lindblad_pc/linalg.hpp"
#include "lindblad_pc/model.hpp"
#include "lindblad_pc/solver.hpp"

namespace {

using namespace lindblad_pc;

const char* model_name(int64_t i) {
  static const char* names[] = {"v3", "cascade3", "lambda3", "cascade4"};
  return names[i];
}

CMatrix state_for(const GeneratorDecomposition& g) {
  // Uniform mixture over all but the top level, admissible for every built-in.
  const int d = g.dimension();
  CMatrix rho = CMatrix::Zero(d, d);
  for (int i = 0; i < d - 1; ++i) rho(i, i) = 1.0 / (d - 1);
  return rho;
}

void BM_Expm(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd(0.0, 1.0);
  CMatrix a(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) a(i, j) = Complex(nd(rng), nd(rng));
  for (auto _ : state) benchmark::DoNotOptimize(expm(a));
}
BENCHMARK(BM_Expm)->Arg(9)->Arg(16)->Arg(64);

void BM_Assemble(benchmark::State& state) {
  const LindbladModel m = builtin(model_name(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(m));
  state.SetLabel(model_name(state.range(0)));
}
BENCHMARK(BM_Assemble)->DenseRange(0, 3);

void BM_PartialSubspace(benchmark::State& state) {
  const auto g = assemble(builtin(model_name(state.range(0))));
  const auto times = default_sample_times();
  for (auto _ : state) benchmark::DoNotOptimize(partial_subspace(g, times));
  state.SetLabel(model_name(state.range(0)));
}
BENCHMARK(BM_PartialSubspace)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_ClosedForm(benchmark::State& state) {
  const auto g = assemble(builtin(model_name(state.range(0))));
  const CMatrix rho0 = state_for(g);
  const auto grid = uniform_grid(20.0, 400);
  for (auto _ : state) benchmark::DoNotOptimize(propagate_closed_form(g, rho0, grid));
  state.SetLabel(model_name(state.range(0)));
}
BENCHMARK(BM_ClosedForm)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const auto g = assemble(builtin(model_name(state.range(0))));
  const CMatrix rho0 = state_for(g);
  const auto grid = uniform_grid(20.0, 400);
  for (auto _ : state) benchmark::DoNotOptimize(ode_oracle(g, rho0, grid));
  state.SetLabel(model_name(state.range(0)));
}
BENCHMARK(BM_Oracle)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
