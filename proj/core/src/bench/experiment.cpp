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

#include "sot/bench/experiment.hpp"

#include <algorithm>

#include "sot/bench/pareto.hpp"
#include "sot/sim_controller.hpp"

namespace sot::bench {

Problem make_experiment_problem(const ExperimentConfig& config) {
  return make_problem(config.problem, config.dim, config.instance, config.num_int);
}

int simulated_workers(const ExperimentConfig& config) {
  return config.strategy.mode == Mode::kSerial ? 1 : config.strategy.workers;
}

TrialResult run_trial(const ExperimentConfig& config, int trial) {
  if (trial < 0) throw ConfigError("trial index must be >= 0");
  const Problem problem = make_experiment_problem(config);
  const ParetoTimeModel durations(config.alpha);

  TrialResult out;
  out.trial = trial;
  out.seed = config.seed + static_cast<std::uint64_t>(trial);

  StrategyConfig sc = config.strategy;
  sc.seed = derive_seed(out.seed, 1);
  SurrogateStrategy strategy(problem, sc);

  SimOptions so;
  so.workers = simulated_workers(config);
  so.t_max = config.t_max;
  so.seed = derive_seed(out.seed, 2);
  SimController controller(problem, durations.as_time_model(), so);

  RunResult r = controller.run(strategy);
  out.trace = std::move(r.trace);
  out.f_best = r.f_best;
  out.x_best = r.x_best;
  out.end_time = r.end_time;
  out.restarts = strategy.restarts();
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.trials < 1) throw ConfigError("at least one trial is required");
  ExperimentResult res;
  res.config = config;
  const Problem problem = make_experiment_problem(config);
  res.f_opt = problem.optimum() ? problem.optimum()->value : 0.0;
  for (int t = 0; t < config.trials; ++t) res.trials.push_back(run_trial(config, t));
  return res;
}

double best_at_time(const ProgressTrace& trace, double t) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : trace)
    if (e.t_end <= t) best = std::min(best, e.f);
  return best;
}

double best_after_evals(const ProgressTrace& trace, int n) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n && i < static_cast<int>(trace.size()); ++i)
    best = std::min(best, trace[static_cast<std::size_t>(i)].f);
  return best;
}

}  // namespace sot::bench
