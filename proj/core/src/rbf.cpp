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

#include "sot/rbf.hpp"

#include <cmath>

#include "sot/linalg.hpp"

namespace sot {

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::kLinear: return "linear";
    case KernelKind::kCubic: return "cubic";
    case KernelKind::kThinPlate: return "tps";
  }
  return "unknown";
}

KernelKind kernel_kind_from_string(std::string_view name) {
  if (name == "linear") return KernelKind::kLinear;
  if (name == "cubic") return KernelKind::kCubic;
  if (name == "tps" || name == "thin-plate") return KernelKind::kThinPlate;
  throw ConfigError("unknown kernel '" + std::string(name) + "'");
}

double Kernel::operator()(double r) const {
  switch (kind_) {
    case KernelKind::kLinear: return r;
    case KernelKind::kCubic: return r * r * r;
    case KernelKind::kThinPlate: return r > 0.0 ? r * r * std::log(r) : 0.0;
  }
  return 0.0;
}

std::string to_string(TailKind kind) {
  return kind == TailKind::kConstant ? "constant" : "linear";
}

TailKind tail_kind_from_string(std::string_view name) {
  if (name == "constant") return TailKind::kConstant;
  if (name == "linear") return TailKind::kLinear;
  throw ConfigError("unknown tail '" + std::string(name) + "'");
}

void Tail::basis(const Vector& x, Eigen::Ref<Vector> out) const {
  out[0] = 1.0;
  if (kind_ == TailKind::kLinear) out.tail(dim_) = x;
}

RbfSurrogate::RbfSurrogate(int dim, Kernel kernel, TailKind tail, double eta)
    : dim_(dim), kernel_(kernel), tail_(tail, dim), eta_(eta), x_(0, dim) {
  if (dim < 1) throw ConfigError("surrogate dimension must be positive");
  if (tail_.degree() < kernel_.order() - 1)
    throw ConfigError("tail degree too low for the " + to_string(kernel.kind()) + " kernel");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw ConfigError("regularization must be >= 0");
}

void RbfSurrogate::set_regularization(double eta) {
  if (factored_)
    throw UnsupportedOperationError("regularization cannot change after factorization");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw ConfigError("regularization must be >= 0");
  eta_ = eta;
}

void RbfSurrogate::check_new_points(const Matrix& x, const Vector& fx) const {
  if (x.cols() != dim_) throw ConfigError("point dimension mismatch");
  if (x.rows() != fx.size()) throw ConfigError("point and value counts differ");
  if (!x.allFinite()) throw ConfigError("non-finite point");
  if (!fx.allFinite()) throw ConfigError("non-finite function value");
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    for (Eigen::Index i = 0; i < x_.rows(); ++i)
      if ((x_.row(i) - x.row(j)).norm() <= kDuplicateTolerance)
        throw DuplicatePointError("point duplicates a stored point");
    for (Eigen::Index i = 0; i < j; ++i)
      if ((x.row(i) - x.row(j)).norm() <= kDuplicateTolerance)
        throw DuplicatePointError("duplicate points in one insertion");
  }
}

void RbfSurrogate::add_points(const Matrix& x, const Vector& fx) {
  check_new_points(x, fx);
  if (x.rows() == 0) return;
  const Eigen::Index first = x_.rows();
  x_.conservativeResize(first + x.rows(), Eigen::NoChange);
  x_.bottomRows(x.rows()) = x;
  f_.conservativeResize(first + fx.size());
  f_.tail(fx.size()) = fx;

  if (factored_) {
    extend(first);
    solve();
    return;
  }
  if (x_.rows() < tail_.size()) return;
  const bool full_rank = tail_.kind() == TailKind::kConstant || has_full_affine_rank(x_);
  if (!full_rank) return;
  factor_initial();
  solve();
}

// Columns `first .. first+count-1` (point indices) of the signed bordered
// matrix, restricted to rows 0 .. m+first+count-1.
Matrix RbfSurrogate::bordered_block(Eigen::Index first, Eigen::Index count) const {
  const Eigen::Index m = tail_.size();
  const Eigen::Index rows = m + first + count;
  const double sign = kernel_.definiteness();
  Matrix block(rows, count);
  Vector pi(m);
  for (Eigen::Index j = 0; j < count; ++j) {
    const Eigen::Index pj = first + j;
    tail_.basis(x_.row(pj).transpose(), pi);
    block.col(j).head(m) = pi;
    for (Eigen::Index i = 0; i < first + count; ++i) {
      const double r = (x_.row(i) - x_.row(pj)).norm();
      double v = sign * kernel_(r);
      if (i == pj) v += eta_;
      block(m + i, j) = v;
    }
  }
  return block;
}

void RbfSurrogate::factor_initial() {
  const Eigen::Index m = tail_.size();
  const Eigen::Index n = x_.rows();
  const Eigen::Index size = m + n;
  Matrix a = Matrix::Zero(size, size);
  const Matrix cols = bordered_block(0, n);
  a.rightCols(n) = cols;
  a.bottomLeftCorner(n, m) = cols.topRows(m).transpose();

  Eigen::PartialPivLU<Matrix> lu(a);
  const Matrix& packed = lu.matrixLU();
  lower_ = packed.triangularView<Eigen::UnitLower>();
  upper_ = packed.triangularView<Eigen::Upper>();
  perm_ = lu.permutationP();
  initial_size_ = size;
  if (!upper_.diagonal().allFinite() || (upper_.diagonal().array() == 0.0).any())
    throw NumericalError("singular RBF system");
  factored_ = true;
  ++full_factorizations_;
}

void RbfSurrogate::extend(Eigen::Index first_new) {
  const Eigen::Index m = tail_.size();
  const Eigen::Index k = x_.rows() - first_new;
  const Eigen::Index old = m + first_new;

  const Matrix block = bordered_block(first_new, k);
  Matrix b = block.topRows(old);
  const Matrix c = block.bottomRows(k);

  // B = Q L11 U12 with Q = diag(P^T, I): U12 = L11^{-1} Q^T B.
  Matrix qb = b;
  qb.topRows(initial_size_) = perm_ * b.topRows(initial_size_);
  const Matrix u12 = lower_.triangularView<Eigen::Lower>().solve(qb);
  // B^T = L21 U11.
  const Matrix l21 =
      upper_.triangularView<Eigen::Upper>().transpose().solve(b).transpose();
  Matrix schur = c - l21 * u12;
  schur = 0.5 * (schur + schur.transpose()).eval();
  Eigen::LLT<Matrix> chol(schur);
  if (chol.info() != Eigen::Success)
    throw NumericalError("trailing Schur complement is not positive definite; "
                         "increase the regularization");
  const Matrix l22 = chol.matrixL();

  const Eigen::Index size = old + k;
  lower_.conservativeResize(size, size);
  upper_.conservativeResize(size, size);
  lower_.topRightCorner(old, k).setZero();
  lower_.bottomLeftCorner(k, old) = l21;
  lower_.bottomRightCorner(k, k) = l22;
  upper_.topRightCorner(old, k) = u12;
  upper_.bottomLeftCorner(k, old).setZero();
  upper_.bottomRightCorner(k, k) = l22.transpose();
  ++incremental_updates_;
}

void RbfSurrogate::solve() {
  const Eigen::Index m = tail_.size();
  const Eigen::Index n = x_.rows();
  const double sign = kernel_.definiteness();
  Vector rhs(m + n);
  rhs.head(m).setZero();
  rhs.tail(n) = sign * f_;
  rhs.head(initial_size_) = (perm_ * rhs.head(initial_size_)).eval();
  lower_.triangularView<Eigen::Lower>().solveInPlace(rhs);
  upper_.triangularView<Eigen::Upper>().solveInPlace(rhs);
  c_ = sign * rhs.head(m);
  lambda_ = rhs.tail(n);
}

void RbfSurrogate::set_values(const Vector& fx) {
  if (fx.size() != x_.rows()) throw ConfigError("value count does not match stored points");
  if (!fx.allFinite()) throw ConfigError("non-finite function value");
  f_ = fx;
  if (factored_) solve();
}

void RbfSurrogate::reset() {
  x_.resize(0, dim_);
  f_.resize(0);
  factored_ = false;
  initial_size_ = 0;
  lower_.resize(0, 0);
  upper_.resize(0, 0);
  lambda_.resize(0);
  c_.resize(0);
}

double RbfSurrogate::predict(const Vector& x) const {
  if (!factored_) throw NotReadyError("RBF surrogate is not ready (rank(P) < m)");
  if (x.size() != dim_) throw ConfigError("point dimension mismatch");
  double s = 0.0;
  for (Eigen::Index i = 0; i < x_.rows(); ++i)
    s += lambda_[i] * kernel_((x_.row(i) - x.transpose()).norm());
  Vector pi(tail_.size());
  tail_.basis(x, pi);
  return s + pi.dot(c_);
}

Vector RbfSurrogate::predict(const Matrix& x) const {
  if (!factored_) throw NotReadyError("RBF surrogate is not ready (rank(P) < m)");
  if (x.cols() != dim_) throw ConfigError("point dimension mismatch");
  Vector out(x.rows());
  Vector pi(tail_.size());
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x_.rows(); ++i)
      s += lambda_[i] * kernel_((x_.row(i) - x.row(j)).norm());
    tail_.basis(x.row(j).transpose(), pi);
    out[j] = s + pi.dot(c_);
  }
  return out;
}

}  // namespace sot
