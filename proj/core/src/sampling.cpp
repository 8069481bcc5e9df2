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

#include "sot/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace sot {

SamplingParams SamplingParams::defaults(int dim, int workers) {
  if (dim < 1 || workers < 1) throw ConfigError("dimension and worker count must be positive");
  SamplingParams p;
  const double pw = static_cast<double>(workers);
  p.fail_tol = workers * static_cast<int>(std::ceil(std::max(4.0 / pw, dim / pw)));
  p.max_fail = 4 * p.fail_tol;
  return p;
}

SamplingState SamplingState::initial(const SamplingParams& params) {
  SamplingState s;
  s.sigma = params.sigma_init;
  return s;
}

RadiusChange adjust_radius(SamplingState& state, const SamplingParams& params, double f,
                           const Vector& x, std::int64_t launch_epoch) {
  const double prev = state.f_best;
  const bool improved = f < prev;
  bool significant = false;
  if (improved) {
    if (!std::isfinite(prev)) {
      significant = true;
    } else {
      const double tol = prev != 0.0 ? params.improvement_tol * std::abs(prev)
                                     : params.improvement_abs;
      significant = f < prev - tol;
    }
    state.f_best = f;
    state.x_best = x;
  }
  state.stagnant = significant ? 0 : state.stagnant + 1;

  if (launch_epoch < state.epoch) return RadiusChange::kSkipped;

  if (significant) {
    ++state.succ_count;
    state.fail_count = 0;
  } else if (!improved) {
    state.succ_count = 0;
    ++state.fail_count;
  }

  const bool expand = state.succ_count >= params.succ_tol;
  const bool shrink = !expand && state.fail_count >= params.fail_tol;
  if (!expand && !shrink) return RadiusChange::kNone;

  state.succ_count = 0;
  state.fail_count = 0;
  const double old = state.sigma;
  state.sigma = expand ? std::min(2.0 * old, params.sigma_max)
                       : std::max(0.5 * old, params.sigma_min);
  if (state.sigma == old) return RadiusChange::kCapped;
  ++state.epoch;
  return expand ? RadiusChange::kExpanded : RadiusChange::kShrunk;
}

bool restart_due(const SamplingState& state, const SamplingParams& params) {
  return state.sigma <= params.sigma_min && state.stagnant >= params.max_fail;
}

}  // namespace sot
