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

#ifndef SOT_LINALG_HPP_
#define SOT_LINALG_HPP_

#include "sot/types.hpp"

namespace sot {

/// Relative tolerance for numerical rank decisions, scaled by the largest
/// column norm of the matrix under test.
inline constexpr double kRankTolerance = 1e-10;

/// Numerical rank via column-pivoted Householder QR.
int numerical_rank(const Matrix& a, double rel_tol = kRankTolerance);

/// True if [1 | X] (rows of X are points) has full column rank d + 1.
bool has_full_affine_rank(const Matrix& points, double rel_tol = kRankTolerance);

}  // namespace sot

#endif  // SOT_LINALG_HPP_
