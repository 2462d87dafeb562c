/*
 * Copyright 2026 The dipsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference vs OpenMP kernels. Arg 0 selects serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "dipsim/matrix.hpp"
#include "dipsim/scheduler.hpp"
#include "dipsim/systolic_array.hpp"
#include "dipsim/verify.hpp"

namespace {

using namespace dipsim;

Execution exec_of(const benchmark::State& state) {
  return state.range(0) ? Execution::parallel : Execution::serial;
}

void BM_MatmulReference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  const Matrix a = random_matrix(n, n, 8, 1);
  const Matrix b = random_matrix(n, n, 8, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(state.range(0) ? matmul_reference_parallel(a, b) : matmul_reference(a, b));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n) * n * n);
}
BENCHMARK(BM_MatmulReference)->ArgsProduct({{0, 1}, {64, 256}})->Unit(benchmark::kMicrosecond);

void BM_ArrayTile(benchmark::State& state) {
  const Arch arch = state.range(1) ? Arch::dip : Arch::ws;
  ArrayConfig cfg;  // 64x64, S=2
  const Matrix w = random_matrix(64, 64, 8, 3);
  const Matrix x = random_matrix(8 * 64, 64, 8, 4);
  for (auto _ : state) benchmark::DoNotOptimize(run_array(arch, cfg, w, x, exec_of(state)));
  state.SetLabel(std::string(to_string(arch)));
}
BENCHMARK(BM_ArrayTile)->ArgsProduct({{0, 1}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_VerifyGrid(benchmark::State& state) {
  VerifyOptions opt;
  opt.seeds = 2;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_verification(opt));
}
BENCHMARK(BM_VerifyGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EngineExecution(benchmark::State& state) {
  ArrayConfig cfg;
  const Matrix a = random_matrix(256, 256, 8, 5);
  const Matrix b = random_matrix(256, 256, 8, 6);
  for (auto _ : state) benchmark::DoNotOptimize(execute_on_engines(a, b, Arch::dip, cfg, exec_of(state)));
}
BENCHMARK(BM_EngineExecution)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
