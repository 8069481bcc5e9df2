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

#ifndef SOT_BENCH_SPEEDUP_HPP_
#define SOT_BENCH_SPEEDUP_HPP_

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sot/bench/experiment.hpp"

namespace sot::bench {

inline constexpr double kErrorFloor = 1e-12;

struct TargetTime {
  double target = 0.0;
  double mean = std::numeric_limits<double>::quiet_NaN();
  double std_error = std::numeric_limits<double>::quiet_NaN();
  int reached = 0;
  /// Trials that never reached the target; left out of the mean.
  int censored = 0;
};

struct SpeedupPoint {
  double target = 0.0;
  double speedup = std::numeric_limits<double>::quiet_NaN();
  double std_error = std::numeric_limits<double>::quiet_NaN();
};

struct ConfigSpeedup {
  std::string mode;
  int workers = 1;
  double alpha = 0.0;
  int trials = 0;
  std::vector<TargetTime> times;
  std::vector<SpeedupPoint> speedup;
};

struct SpeedupReport {
  std::string problem;
  int dim = 0;
  /// Error range shared by every run: [max final error, min first error].
  double lo = std::numeric_limits<double>::quiet_NaN();
  double hi = std::numeric_limits<double>::quiet_NaN();
  bool empty = true;
  /// Easiest (largest error) first.
  std::vector<double> targets;
  std::vector<ConfigSpeedup> configs;
};

/// `n` error targets spaced evenly in log scale from `hi` down to `lo`.
std::vector<double> log_targets(double lo, double hi, int n);

/// Simulated time at which the running best first comes within
/// `target_error` of the optimum.
std::optional<double> time_to_target(const ProgressTrace& trace, double f_opt,
                                     double target_error);

/// Relative speedup S(p) = T(1) / T(p) per target, where T is the mean
/// time-to-target over the trials that reach it. Experiments are grouped by
/// (mode, workers, alpha); each alpha needs a single-worker baseline.
/// Standard errors of S follow from the delta method. Throws ConfigError
/// for fewer than two configurations, mixed problems, or a missing
/// baseline. An empty error intersection yields a report with no targets.
SpeedupReport compute_speedup(const std::vector<ExperimentResult>& experiments, int num_targets);

}  // namespace sot::bench

#endif  // SOT_BENCH_SPEEDUP_HPP_
