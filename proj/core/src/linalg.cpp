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

#include "sot/linalg.hpp"

namespace sot {

int numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  const double max_norm = a.colwise().norm().maxCoeff();
  if (max_norm == 0.0) return 0;
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  // Eigen compares |R_ii| against threshold * max|R_11|; R_11 equals the
  // largest column norm after pivoting, so this is rel_tol * max column norm.
  qr.setThreshold(rel_tol);
  return static_cast<int>(qr.rank());
}

bool has_full_affine_rank(const Matrix& points, double rel_tol) {
  const Eigen::Index n = points.rows();
  const Eigen::Index d = points.cols();
  if (n < d + 1) return false;
  Matrix p(n, d + 1);
  p.col(0).setOnes();
  p.rightCols(d) = points;
  return numerical_rank(p, rel_tol) == d + 1;
}

}  // namespace sot
