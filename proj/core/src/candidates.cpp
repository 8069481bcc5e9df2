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

#include "sot/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sot {

std::string to_string(CandidateKind kind) {
  switch (kind) {
    case CandidateKind::kSrbf: return "srbf";
    case CandidateKind::kDycors: return "dycors";
    case CandidateKind::kUniform: return "uniform";
  }
  return "unknown";
}

void snap_to_grid(Eigen::Ref<Vector> u, const Problem& problem) {
  u = u.cwiseMax(0.0).cwiseMin(1.0);
  for (int j : problem.int_indices()) {
    const double lo = problem.lower()[j];
    const double range = problem.upper()[j] - lo;
    const double x = std::clamp(std::round(lo + u[j] * range), lo, problem.upper()[j]);
    u[j] = (x - lo) / range;
  }
}

namespace {

double coordinate_sd(double sigma, const Problem& problem, int j) {
  if (!problem.is_integer(j)) return sigma;
  const double range = problem.upper()[j] - problem.lower()[j];
  return std::max(sigma, 1.0 / range);
}

void check_center(const Vector& best, const Problem& problem, double sigma, int count) {
  if (best.size() != problem.dim()) throw ConfigError("center has the wrong dimension");
  if (!(sigma > 0.0)) throw ConfigError("sampling radius must be positive");
  if (count < 1) throw ConfigError("candidate count must be positive");
}

}  // namespace

CandidateSet generate_srbf(const Vector& best, double sigma, const Problem& problem, Rng& rng,
                           int count) {
  check_center(best, problem, sigma, count);
  const int d = problem.dim();
  std::normal_distribution<double> normal(0.0, 1.0);
  CandidateSet out{Matrix(count, d), CandidateKind::kSrbf};
  Vector u(d);
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < d; ++j) u[j] = best[j] + coordinate_sd(sigma, problem, j) * normal(rng);
    snap_to_grid(u, problem);
    out.points.row(i) = u.transpose();
  }
  return out;
}

double dycors_probability(int n, int n0, int n_max, int dim) {
  if (dim < 1) throw ConfigError("dimension must be positive");
  if (n_max <= n0) throw ConfigError("evaluation budget must exceed the design size");
  const double lead = std::min(20.0 / dim, 1.0);
  if (n <= n0) return lead;
  const double floor = 1.0 / dim;
  if (n >= n_max) return std::min(lead, floor);
  const double p = lead * (1.0 - std::log(static_cast<double>(n - n0)) /
                                     std::log(static_cast<double>(n_max - n0)));
  return std::max(p, floor);
}

CandidateSet generate_dycors(const Vector& best, double sigma, int n, int n0, int n_max,
                             const Problem& problem, Rng& rng, int count) {
  check_center(best, problem, sigma, count);
  const int d = problem.dim();
  const double prob = dycors_probability(n, n0, n_max, d);
  std::bernoulli_distribution flip(prob);
  std::uniform_int_distribution<int> pick(0, d - 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  CandidateSet out{Matrix(count, d), CandidateKind::kDycors};
  std::vector<char> mask(static_cast<std::size_t>(d));
  Vector u(d);
  for (int i = 0; i < count; ++i) {
    bool any = false;
    for (int j = 0; j < d; ++j) {
      mask[static_cast<std::size_t>(j)] = flip(rng) ? 1 : 0;
      any = any || mask[static_cast<std::size_t>(j)];
    }
    if (!any) mask[static_cast<std::size_t>(pick(rng))] = 1;
    u = best;
    for (int j = 0; j < d; ++j)
      if (mask[static_cast<std::size_t>(j)])
        u[j] += coordinate_sd(sigma, problem, j) * normal(rng);
    snap_to_grid(u, problem);
    out.points.row(i) = u.transpose();
  }
  return out;
}

CandidateSet generate_uniform(const Problem& problem, Rng& rng, int count) {
  if (count < 1) throw ConfigError("candidate count must be positive");
  const int d = problem.dim();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CandidateSet out{Matrix(count, d), CandidateKind::kUniform};
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < d; ++j) {
      if (problem.is_integer(j)) {
        const auto lo = static_cast<long long>(problem.lower()[j]);
        const auto hi = static_cast<long long>(problem.upper()[j]);
        std::uniform_int_distribution<long long> level(lo, hi);
        out.points(i, j) = static_cast<double>(level(rng) - lo) / static_cast<double>(hi - lo);
      } else {
        out.points(i, j) = unit(rng);
      }
    }
  }
  return out;
}

WeightCycle::WeightCycle(std::vector<double> pattern) : pattern_(std::move(pattern)) {
  if (pattern_.empty()) throw ConfigError("weight pattern is empty");
  for (double w : pattern_)
    if (!(w >= 0.0 && w <= 1.0)) throw ConfigError("weights must lie in [0, 1]");
}

double WeightCycle::next() {
  const double w = peek();
  position_ = (position_ + 1) % static_cast<int>(pattern_.size());
  return w;
}

double WeightCycle::peek(int ahead) const {
  const int n = static_cast<int>(pattern_.size());
  return pattern_[static_cast<std::size_t>(((position_ + ahead) % n + n) % n)];
}

void WeightCycle::set_position(int p) {
  const int n = static_cast<int>(pattern_.size());
  position_ = ((p % n) + n) % n;
}

std::vector<int> select_candidates(const Matrix& candidates, const Vector& values,
                                   const Matrix& evaluated, std::span<const double> weights,
                                   double dist_tol) {
  const Eigen::Index m = candidates.rows();
  if (m == 0) throw ConfigError("candidate set is empty");
  if (values.size() != m) throw ConfigError("one surrogate value per candidate required");
  if (evaluated.rows() > 0 && evaluated.cols() != candidates.cols())
    throw ConfigError("dimension mismatch between candidates and evaluated points");

  const double smin = values.minCoeff();
  const double smax = values.maxCoeff();
  Vector vs(m);
  for (Eigen::Index i = 0; i < m; ++i)
    vs[i] = smax > smin ? (values[i] - smin) / (smax - smin) : 1.0;

  Vector dist = Vector::Constant(m, std::numeric_limits<double>::infinity());
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index a = 0; a < evaluated.rows(); ++a)
      dist[i] = std::min(dist[i], (candidates.row(i) - evaluated.row(a)).norm());

  std::vector<int> picks;
  std::vector<char> taken(static_cast<std::size_t>(m), 0);
  picks.reserve(weights.size());
  for (double w : weights) {
    const double dmax = dist.maxCoeff();
    const double dmin = dist.minCoeff();
    Eigen::Index best = -1;
    double best_merit = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (taken[static_cast<std::size_t>(i)] || dist[i] < dist_tol) continue;
      const double vd = dmax > dmin ? (dmax - dist[i]) / (dmax - dmin) : 1.0;
      const double merit = w * vs[i] + (1.0 - w) * vd;
      if (merit < best_merit) {
        best_merit = merit;
        best = i;
      }
    }
    if (best < 0) {
      double far = -1.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (!taken[static_cast<std::size_t>(i)] && dist[i] > far) {
          far = dist[i];
          best = i;
        }
      }
      if (best < 0) break;  // every candidate already picked
    }
    picks.push_back(static_cast<int>(best));
    taken[static_cast<std::size_t>(best)] = 1;
    for (Eigen::Index i = 0; i < m; ++i)
      dist[i] = std::min(dist[i], (candidates.row(i) - candidates.row(best)).norm());
  }
  return picks;
}

std::vector<int> select_candidates(const Matrix& candidates, const Surrogate& surrogate,
                                   const Matrix& evaluated, std::span<const double> weights,
                                   double dist_tol) {
  return select_candidates(candidates, surrogate.predict(candidates), evaluated, weights,
                           dist_tol);
}

}  // namespace sot
