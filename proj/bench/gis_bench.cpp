// Copyright 2026 The gis Authors
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

// Serial reference vs OpenMP kernels: the repetition runner and the block
// weighing loop inside one GIS estimate.

#include <benchmark/benchmark.h>

#include "gis/bench.hpp"
#include "gis/estimators.hpp"
#include "gis/scenario.hpp"

namespace {

gis::RunSpec cell(const char* method, long n) {
  gis::RunSpec spec;
  spec.scenario = "table3";
  spec.method = method;
  spec.t = 200;
  spec.reps = 8;
  spec.seed = 1;
  spec.overrides["n"] = std::to_string(n);
  return spec;
}

void BM_RunSerial(benchmark::State& state) {
  const auto spec = cell("gis", state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gis::run_serial(spec));
}

void BM_RunParallel(benchmark::State& state) {
  const auto spec = cell("gis", state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gis::run(spec));
}

void gis_estimate(benchmark::State& state, gis::Exec exec) {
  const auto s = gis::make_scenario("table3", {{"n", std::to_string(state.range(0))}});
  for (auto _ : state) {
    gis::Rng rng(7);
    benchmark::DoNotOptimize(
        gis::gis_estimate(s.problem, s.defaults.search, 100, rng, gis::WeightMode::Indirect, exec).estimate);
  }
  state.SetItemsProcessed(state.iterations() * 100);
}

void BM_GisEstimateSerial(benchmark::State& state) { gis_estimate(state, gis::Exec::Serial); }
void BM_GisEstimateParallel(benchmark::State& state) { gis_estimate(state, gis::Exec::Parallel); }

void BM_IsEstimate(benchmark::State& state) {
  const auto s = gis::make_scenario("table3", {{"n", std::to_string(state.range(0))}});
  for (auto _ : state) {
    gis::Rng rng(7);
    benchmark::DoNotOptimize(gis::is_estimate(s.problem, 1000, rng).estimate);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}

BENCHMARK(BM_RunSerial)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunParallel)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GisEstimateSerial)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GisEstimateParallel)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IsEstimate)->Arg(1)->Arg(10)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
