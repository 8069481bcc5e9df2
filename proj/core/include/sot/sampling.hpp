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

#ifndef SOT_SAMPLING_HPP_
#define SOT_SAMPLING_HPP_

#include <cstdint>
#include <limits>

#include "sot/types.hpp"

namespace sot {

/// Hyper-parameters of the sampling-radius schedule. Radii are in unit-cube
/// coordinates, where the domain length is 1.
struct SamplingParams {
  double sigma_init = 0.1;
  double sigma_min = 0.1 / 64.0;
  double sigma_max = 0.1;
  int succ_tol = 3;
  int fail_tol = 10;
  int max_fail = 40;
  /// Relative significance threshold on |f_best|.
  double improvement_tol = 1e-3;
  /// Threshold used instead when f_best is exactly zero.
  double improvement_abs = 1e-8;

  /// Defaults for `workers` parallel evaluations in dimension `dim`:
  /// fail_tol = p * ceil(max(4/p, d/p)) and max_fail = 4 fail_tol.
  static SamplingParams defaults(int dim, int workers);
};

/// Mutable state of the sampling-radius schedule for one optimization run.
struct SamplingState {
  double sigma = 0.1;
  int succ_count = 0;
  int fail_count = 0;
  /// Bumped whenever sigma changes or the run restarts. Evaluations launched
  /// in an older epoch do not move the counters.
  std::int64_t epoch = 0;
  double f_best = std::numeric_limits<double>::infinity();
  Vector x_best;
  /// Completed evaluations since the last significant improvement.
  int stagnant = 0;

  static SamplingState initial(const SamplingParams& params);
};

enum class RadiusChange { kNone, kSkipped, kExpanded, kShrunk, kCapped };

/// Applies one completed evaluation (value `f` at unit point `x`, launched
/// in `launch_epoch`) to the schedule.
///
/// The best point is always updated. Significance is judged against the best
/// value before this evaluation: f < f_prev - tol * |f_prev|. A significant
/// improvement increments the success counter and clears the failure counter;
/// an insignificant one leaves both alone; no improvement clears successes
/// and increments failures. When a counter reaches its tolerance sigma is
/// doubled (capped at sigma_max) or halved (floored at sigma_min) and both
/// counters reset. Stale evaluations (launch_epoch < epoch) only update the
/// best point and the stagnation count.
RadiusChange adjust_radius(SamplingState& state, const SamplingParams& params, double f,
                           const Vector& x, std::int64_t launch_epoch);

/// True if the run should restart: sigma sits at its floor and the last
/// `max_fail` completed evaluations brought no significant improvement.
bool restart_due(const SamplingState& state, const SamplingParams& params);

}  // namespace sot

#endif  // SOT_SAMPLING_HPP_
