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

#ifndef SOT_CANDIDATES_HPP_
#define SOT_CANDIDATES_HPP_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sot/problem.hpp"
#include "sot/surrogate.hpp"
#include "sot/types.hpp"

namespace sot {

enum class CandidateKind { kSrbf, kDycors, kUniform };

std::string to_string(CandidateKind kind);

/// Candidate points in the unit cube, one per row. Integer coordinates of
/// the underlying problem are already snapped to their grid.
struct CandidateSet {
  Matrix points;
  CandidateKind kind = CandidateKind::kSrbf;

  int size() const { return static_cast<int>(points.rows()); }
};

/// Default number of candidates per proposal: 100 d.
inline int default_candidate_count(int dim) { return 100 * dim; }

/// Snaps the integer coordinates of a unit-cube point to the problem's
/// integer grid (half away from zero, in problem units) and clips to [0, 1].
void snap_to_grid(Eigen::Ref<Vector> unit_point, const Problem& problem);

/// Perturbs every coordinate of `best` (unit coordinates) by N(0, sigma^2).
/// Integer coordinates use a standard deviation of at least one grid step.
CandidateSet generate_srbf(const Vector& best, double sigma, const Problem& problem, Rng& rng,
                           int count);

/// Per-coordinate perturbation probability after `n` evaluations:
///
///   min(20/d, 1) * (1 - log(n - n0) / log(n_max - n0)),
///
/// equal to min(20/d, 1) at n <= n0 and floored at 1/d afterwards so a
/// perturbation always remains possible. Throws ConfigError if n_max <= n0.
double dycors_probability(int n, int n0, int n_max, int dim);

/// Like generate_srbf, but each coordinate is perturbed only with
/// probability `dycors_probability(n, n0, n_max, d)` (at least one
/// coordinate per candidate, picked uniformly, is always perturbed).
CandidateSet generate_dycors(const Vector& best, double sigma, int n, int n0, int n_max,
                             const Problem& problem, Rng& rng, int count);

/// Uniform points in the unit cube; integer coordinates are uniform over
/// their integer values.
CandidateSet generate_uniform(const Problem& problem, Rng& rng, int count);

/// Cyclic weight pattern for the merit function.
class WeightCycle {
 public:
  static constexpr std::array<double, 4> kDefaultPattern = {0.3, 0.5, 0.8, 0.95};

  WeightCycle() = default;
  explicit WeightCycle(std::vector<double> pattern);

  double next();
  double peek(int ahead = 0) const;
  int position() const { return position_; }
  void set_position(int p);
  std::size_t length() const { return pattern_.size(); }

 private:
  std::vector<double> pattern_{kDefaultPattern.begin(), kDefaultPattern.end()};
  int position_ = 0;
};

/// Default minimum distance between a new proposal and the evaluated or
/// pending points, in unit-cube coordinates.
inline constexpr double kDefaultDistanceTolerance = 0.0025;

/// Weighted-distance merit selection.
///
/// For each pick j, every candidate x gets
///   w_j V_S(x) + (1 - w_j) V_D(x),
/// where V_S is the min-max normalized surrogate value (1 for all when the
/// values are constant) and V_D = (D_max - D(x)) / (D_max - D_min) with D(x)
/// the distance to the nearest point of `evaluated` (again 1 for all when the
/// distances are constant). Candidates with D(x) < `dist_tol` are excluded;
/// ties go to the lowest index. After each pick the chosen candidate joins
/// `evaluated` before the next pick. If every candidate is excluded, the one
/// with the largest D(x) is taken.
///
/// Returns indices into `candidates`, one per weight.
std::vector<int> select_candidates(const Matrix& candidates, const Vector& surrogate_values,
                                   const Matrix& evaluated, std::span<const double> weights,
                                   double dist_tol = kDefaultDistanceTolerance);

/// Convenience overload that evaluates the surrogate on the candidates.
std::vector<int> select_candidates(const Matrix& candidates, const Surrogate& surrogate,
                                   const Matrix& evaluated, std::span<const double> weights,
                                   double dist_tol = kDefaultDistanceTolerance);

}  // namespace sot

#endif  // SOT_CANDIDATES_HPP_
