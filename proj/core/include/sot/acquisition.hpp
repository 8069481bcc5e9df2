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

#ifndef SOT_ACQUISITION_HPP_
#define SOT_ACQUISITION_HPP_

#include <span>
#include <vector>

#include "sot/candidates.hpp"
#include "sot/surrogate.hpp"
#include "sot/types.hpp"

namespace sot {

double normal_pdf(double z);
double normal_cdf(double z);

/// Probability of improvement Phi((f_plus - mu - xi) / sigma). With sigma = 0
/// it is 1 when f_plus - mu - xi > 0 and 0 otherwise.
double probability_of_improvement(double mu, double sigma, double f_plus, double xi = 0.0);

/// Expected improvement (f_plus - mu - xi) Phi(Z) + sigma phi(Z) with
/// Z = (f_plus - mu - xi) / sigma; exactly 0 when sigma = 0.
double expected_improvement(double mu, double sigma, double f_plus, double xi = 0.0);

/// Lower confidence bound mu - kappa sigma (smaller is better).
double lower_confidence_bound(double mu, double sigma, double kappa);

enum class AcquisitionKind { kEi, kPi, kLcb };

struct AcquisitionParams {
  AcquisitionKind kind = AcquisitionKind::kEi;
  double xi = 0.0;
  double kappa = 2.0;
};

/// Scores every candidate so that larger is better (LCB is negated).
/// The surrogate must provide a predictive variance.
Vector acquisition_scores(const Matrix& candidates, const Surrogate& model, double f_plus,
                          const AcquisitionParams& params);

/// Picks `count` best-scoring candidates, skipping any closer than
/// `dist_tol` to `evaluated` or to an earlier pick; ties go to the lowest
/// index. Falls back to the candidate farthest from `evaluated` when every
/// candidate is excluded.
std::vector<int> select_by_score(const Matrix& candidates, const Vector& scores,
                                 const Matrix& evaluated, int count,
                                 double dist_tol = kDefaultDistanceTolerance);

}  // namespace sot

#endif  // SOT_ACQUISITION_HPP_
