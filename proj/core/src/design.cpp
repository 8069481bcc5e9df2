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

#include "sot/design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sot/linalg.hpp"

namespace sot {

std::string to_string(DesignKind kind) {
  switch (kind) {
    case DesignKind::kSlhd: return "slhd";
    case DesignKind::kLhd: return "lhd";
    case DesignKind::kFactorial2: return "factorial2";
  }
  return "unknown";
}

DesignKind design_kind_from_string(std::string_view name) {
  if (name == "slhd") return DesignKind::kSlhd;
  if (name == "lhd") return DesignKind::kLhd;
  if (name == "factorial2") return DesignKind::kFactorial2;
  throw ConfigError("unknown design '" + std::string(name) + "'");
}

namespace {

double level(int i, int n) { return (static_cast<double>(i) + 0.5) / static_cast<double>(n); }

Matrix latin(int n, int d, Rng& rng) {
  Matrix pts(n, d);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int j = 0; j < d; ++j) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < n; ++i) pts(i, j) = level(perm[static_cast<std::size_t>(i)], n);
  }
  return pts;
}

Matrix symmetric_latin(int n, int d, Rng& rng) {
  Matrix pts(n, d);
  const int half = n / 2;
  std::vector<int> lower(static_cast<std::size_t>(half));
  std::bernoulli_distribution coin(0.5);
  for (int j = 0; j < d; ++j) {
    // Each of the first `half` rows takes one level from each mirrored
    // pair {k, n-1-k}; its partner row gets the other one.
    for (int k = 0; k < half; ++k) lower[static_cast<std::size_t>(k)] = coin(rng) ? k : n - 1 - k;
    std::shuffle(lower.begin(), lower.end(), rng);
    for (int i = 0; i < half; ++i) {
      const int lv = lower[static_cast<std::size_t>(i)];
      pts(i, j) = level(lv, n);
      pts(n - 1 - i, j) = level(n - 1 - lv, n);
    }
    if (n % 2 == 1) pts(half, j) = 0.5;
  }
  return pts;
}

Matrix factorial2(int d) {
  const int n = 1 << d;
  Matrix pts(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) pts(i, j) = ((i >> j) & 1) ? 1.0 : 0.0;
  return pts;
}

double round_half_away(double v) { return std::round(v); }

bool has_coincident_rows(const std::vector<Vector>& pts) {
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      if (pts[a] == pts[b]) return true;
  return false;
}

}  // namespace

Design generate_design(DesignKind kind, int n, int d, Rng& rng) {
  if (d < 1) throw ConfigError("design dimension must be positive");
  switch (kind) {
    case DesignKind::kFactorial2:
      if (d > kMaxFactorialDim)
        throw ConfigError("2-factorial design refused for d > " + std::to_string(kMaxFactorialDim));
      return {factorial2(d), kind};
    case DesignKind::kLhd:
      if (n < 1) throw ConfigError("design needs at least one point");
      return {latin(n, d, rng), kind};
    case DesignKind::kSlhd:
      if (n < 1) throw ConfigError("design needs at least one point");
      return {symmetric_latin(n, d, rng), kind};
  }
  throw ConfigError("unknown design kind");
}

RealizedDesign realize(const Design& design, const Problem& problem, Rng& rng,
                       int max_attempts) {
  if (design.dim() != problem.dim())
    throw ConfigError("design dimension does not match the problem");
  const Vector& lo = problem.lower();
  const Vector range = problem.upper() - lo;

  Design current = design;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<Vector> pts;
    pts.reserve(static_cast<std::size_t>(current.size()));
    Matrix unit(current.size(), current.dim());
    for (int i = 0; i < current.size(); ++i) {
      Vector x = lo + range.cwiseProduct(current.points.row(i).transpose());
      for (int j : problem.int_indices()) x[j] = round_half_away(x[j]);
      x = x.cwiseMax(lo).cwiseMin(problem.upper());
      unit.row(i) = (x - lo).cwiseQuotient(range).transpose();
      pts.push_back(std::move(x));
    }
    if (!has_coincident_rows(pts) && has_full_affine_rank(unit)) {
      return {std::move(pts), attempt};
    }
    if (attempt < max_attempts)
      current = generate_design(design.kind, design.size(), design.dim(), rng);
  }
  throw DomainError("no non-degenerate design found after " + std::to_string(max_attempts) +
                    " attempts");
}

}  // namespace sot
