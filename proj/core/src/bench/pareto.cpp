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

#include "sot/bench/pareto.hpp"

#include <cmath>
#include <limits>

namespace sot::bench {

ParetoTimeModel::ParetoTimeModel(double alpha, double scale) : alpha_(alpha), scale_(scale) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw ConfigError("Pareto shape must exceed 1 (finite mean)");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("Pareto scale must be positive");
}

double ParetoTimeModel::quantile(double u) const {
  if (!(u > 0.0 && u <= 1.0)) throw ConfigError("quantile level must lie in (0, 1]");
  return scale_ * std::pow(u, -1.0 / alpha_);
}

double ParetoTimeModel::sample(Rng& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return quantile(1.0 - unit(rng));
}

double ParetoTimeModel::mean() const { return alpha_ * scale_ / (alpha_ - 1.0); }

double ParetoTimeModel::variance() const {
  if (alpha_ <= 2.0) return std::numeric_limits<double>::infinity();
  const double a1 = alpha_ - 1.0;
  return alpha_ * scale_ * scale_ / (a1 * a1 * (alpha_ - 2.0));
}

double ParetoTimeModel::stddev() const { return std::sqrt(variance()); }

TimeModel ParetoTimeModel::as_time_model() const {
  return [model = *this](Rng& rng) { return model.sample(rng); };
}

}  // namespace sot::bench
