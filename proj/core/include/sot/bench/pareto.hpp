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

#ifndef SOT_BENCH_PARETO_HPP_
#define SOT_BENCH_PARETO_HPP_

#include "sot/sim_controller.hpp"
#include "sot/types.hpp"

namespace sot::bench {

/// Pareto evaluation-time model with density alpha b^alpha / x^(alpha+1)
/// on [b, inf).
class ParetoTimeModel {
 public:
  /// Requires alpha > 1 (finite mean) and b > 0.
  explicit ParetoTimeModel(double alpha, double scale = 1.0);

  double alpha() const { return alpha_; }
  double scale() const { return scale_; }

  /// Inverse CDF: b u^(-1/alpha) for u in (0, 1].
  double quantile(double u) const;
  double sample(Rng& rng) const;

  double mean() const;
  /// Infinite for alpha <= 2.
  double variance() const;
  double stddev() const;

  TimeModel as_time_model() const;

 private:
  double alpha_;
  double scale_;
};

}  // namespace sot::bench

#endif  // SOT_BENCH_PARETO_HPP_
