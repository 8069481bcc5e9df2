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

#ifndef SOT_DESIGN_HPP_
#define SOT_DESIGN_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "sot/problem.hpp"
#include "sot/types.hpp"

namespace sot {

enum class DesignKind { kSlhd, kLhd, kFactorial2 };

std::string to_string(DesignKind kind);
DesignKind design_kind_from_string(std::string_view name);

/// Initial experimental design in the unit hypercube; one point per row.
struct Design {
  Matrix points;
  DesignKind kind = DesignKind::kSlhd;

  int size() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }
};

inline constexpr int kMaxFactorialDim = 20;
inline constexpr int kDefaultRealizeAttempts = 100;

/// Generates a design of `n` points in [0, 1]^d.
///
/// Latin designs place every column on the level midpoints (i - 0.5) / n.
/// The symmetric variant pairs rows so that row i + row (n + 1 - i) is the
/// all-ones vector (the middle row of an odd design sits at 0.5). For
/// kFactorial2 the size is always 2^d and `n` is ignored.
Design generate_design(DesignKind kind, int n, int d, Rng& rng);

struct RealizedDesign {
  std::vector<Vector> points;  // in problem coordinates
  int attempts = 1;            // designs generated, including the first
};

/// Maps a unit design onto the problem domain, rounds integer coordinates
/// half away from zero, and regenerates (same kind and size) while the result
/// has coincident points or [1 | X] is rank deficient.
///
/// Throws DomainError if no acceptable design is found within
/// `max_attempts` designs.
RealizedDesign realize(const Design& design, const Problem& problem, Rng& rng,
                       int max_attempts = kDefaultRealizeAttempts);

}  // namespace sot

#endif  // SOT_DESIGN_HPP_
