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

#ifndef SOT_BENCH_EXPERIMENT_HPP_
#define SOT_BENCH_EXPERIMENT_HPP_

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sot/problem.hpp"
#include "sot/record.hpp"
#include "sot/surrogate_strategy.hpp"

namespace sot::bench {

struct ExperimentConfig {
  std::string problem = "ackley";
  int dim = 10;
  /// Catalog instance; positive instances shift the optimum.
  int instance = 1;
  int num_int = 0;
  /// Mode, worker count, budget and surrogate settings. The seed field is
  /// ignored; each trial derives its own.
  StrategyConfig strategy;
  double alpha = 2.84;
  double t_max = std::numeric_limits<double>::infinity();
  int trials = 1;
  std::uint64_t seed = 0;
};

struct TrialResult {
  int trial = 0;
  std::uint64_t seed = 0;
  ProgressTrace trace;
  double f_best = std::numeric_limits<double>::infinity();
  Vector x_best;
  double end_time = 0.0;
  int restarts = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  double f_opt = 0.0;
  std::vector<TrialResult> trials;
};

Problem make_experiment_problem(const ExperimentConfig& config);

/// Number of simulated workers: 1 in serial mode, else the configured p.
int simulated_workers(const ExperimentConfig& config);

/// Runs trial `trial` in simulated time with Pareto(alpha) durations. The
/// trial seed is config.seed + trial; the strategy and the duration stream
/// draw from separate streams derived from it.
TrialResult run_trial(const ExperimentConfig& config, int trial);

/// Runs trials 0 .. trials-1 one after another.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Best value among evaluations finished by time t (inf if none).
double best_at_time(const ProgressTrace& trace, double t);

/// Best value after the first `n` completed evaluations (inf if n = 0).
double best_after_evals(const ProgressTrace& trace, int n);

/// Distance of a value from the known optimum, never negative.
inline double error_of(double value, double f_opt) { return std::max(0.0, value - f_opt); }

}  // namespace sot::bench

#endif  // SOT_BENCH_EXPERIMENT_HPP_
