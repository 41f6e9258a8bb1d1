// Copyright 2026 The invlearn Authors.
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

#include <benchmark/benchmark.h>

#include "invlearn/harness.hpp"

namespace {

invlearn::ExperimentConfig bench_config(std::int64_t K) {
  invlearn::ExperimentConfig c;
  c.K = K;
  c.L = 10;
  c.T = 1000;
  c.alphas = {0.0, 0.95};
  return c;
}

void BM_Serial(benchmark::State& state) {
  const auto config = bench_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(invlearn::run_experiment_serial(config));
  state.SetItemsProcessed(state.iterations() * config.K * config.L * config.T * 2);
}

void BM_OpenMP(benchmark::State& state) {
  const auto config = bench_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(invlearn::run_experiment(config));
  state.SetItemsProcessed(state.iterations() * config.K * config.L * config.T * 2);
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OpenMP)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
