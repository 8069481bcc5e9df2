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

#include "sot/acquisition.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sot {

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double probability_of_improvement(double mu, double sigma, double f_plus, double xi) {
  const double gap = f_plus - mu - xi;
  if (sigma <= 0.0) return gap > 0.0 ? 1.0 : 0.0;
  return normal_cdf(gap / sigma);
}

double expected_improvement(double mu, double sigma, double f_plus, double xi) {
  if (sigma <= 0.0) return 0.0;
  const double gap = f_plus - mu - xi;
  const double z = gap / sigma;
  return std::max(0.0, gap * normal_cdf(z) + sigma * normal_pdf(z));
}

double lower_confidence_bound(double mu, double sigma, double kappa) { return mu - kappa * sigma; }

Vector acquisition_scores(const Matrix& candidates, const Surrogate& model, double f_plus,
                          const AcquisitionParams& params) {
  if (!model.has_variance())
    throw ConfigError("acquisition functions need a surrogate with predictive variance");
  Vector scores(candidates.rows());
  for (Eigen::Index i = 0; i < candidates.rows(); ++i) {
    const auto [mu, var] = model.predict_mv(candidates.row(i).transpose());
    const double sd = std::sqrt(var);
    switch (params.kind) {
      case AcquisitionKind::kEi:
        scores[i] = expected_improvement(mu, sd, f_plus, params.xi);
        break;
      case AcquisitionKind::kPi:
        scores[i] = probability_of_improvement(mu, sd, f_plus, params.xi);
        break;
      case AcquisitionKind::kLcb:
        scores[i] = -lower_confidence_bound(mu, sd, params.kappa);
        break;
    }
  }
  return scores;
}

std::vector<int> select_by_score(const Matrix& candidates, const Vector& scores,
                                 const Matrix& evaluated, int count, double dist_tol) {
  const Eigen::Index m = candidates.rows();
  if (m == 0) throw ConfigError("candidate set is empty");
  if (scores.size() != m) throw ConfigError("one score per candidate required");
  Vector dist = Vector::Constant(m, std::numeric_limits<double>::infinity());
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index a = 0; a < evaluated.rows(); ++a)
      dist[i] = std::min(dist[i], (candidates.row(i) - evaluated.row(a)).norm());

  std::vector<int> picks;
  std::vector<char> taken(static_cast<std::size_t>(m), 0);
  for (int k = 0; k < count; ++k) {
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (taken[static_cast<std::size_t>(i)] || dist[i] < dist_tol) continue;
      if (best < 0 || scores[i] > scores[best]) best = i;
    }
    if (best < 0) {
      for (Eigen::Index i = 0; i < m; ++i)
        if (!taken[static_cast<std::size_t>(i)] && (best < 0 || dist[i] > dist[best])) best = i;
      if (best < 0) break;
    }
    picks.push_back(static_cast<int>(best));
    taken[static_cast<std::size_t>(best)] = 1;
    for (Eigen::Index i = 0; i < m; ++i)
      dist[i] = std::min(dist[i], (candidates.row(i) - candidates.row(best)).norm());
  }
  return picks;
}

}  // namespace sot
