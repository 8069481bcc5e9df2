// Copyright 2026 The sot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "sot/bench/experiment.hpp"

namespace {

// One simulated-time trial, surrogate and controller overhead only.
void BM_SimulatedTrial(benchmark::State& state) {
  sot::bench::ExperimentConfig c;
  c.problem = "rastrigin";
  c.dim = 10;
  c.strategy.mode = sot::Mode::kAsync;
  c.strategy.workers = static_cast<int>(state.range(0));
  c.strategy.max_evals = 200;
  for (auto _ : state) benchmark::DoNotOptimize(sot::bench::run_trial(c, 0).f_best);
}
BENCHMARK(BM_SimulatedTrial)->Arg(1)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
