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

#ifndef SOT_RBF_HPP_
#define SOT_RBF_HPP_

#include <string>
#include <string_view>

#include "sot/surrogate.hpp"
#include "sot/types.hpp"

namespace sot {

enum class KernelKind { kLinear, kCubic, kThinPlate };

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(std::string_view name);

/// Radial kernel phi(r): linear r, cubic r^3, thin-plate r^2 log r (0 at r=0).
class Kernel {
 public:
  explicit Kernel(KernelKind kind = KernelKind::kCubic) : kind_(kind) {}

  KernelKind kind() const { return kind_; }
  double operator()(double r) const;
  /// Order of conditional definiteness; the tail must have degree >= order-1.
  int order() const { return kind_ == KernelKind::kLinear ? 1 : 2; }
  /// +1 when phi is conditionally positive definite, -1 when it is
  /// conditionally negative definite (the linear kernel).
  double definiteness() const { return kind_ == KernelKind::kLinear ? -1.0 : 1.0; }

 private:
  KernelKind kind_;
};

enum class TailKind { kConstant, kLinear };

std::string to_string(TailKind kind);
TailKind tail_kind_from_string(std::string_view name);

/// Polynomial tail: the constant, or the affine functions {1, x_1, ..., x_d}.
class Tail {
 public:
  Tail(TailKind kind, int dim) : kind_(kind), dim_(dim) {}

  TailKind kind() const { return kind_; }
  int degree() const { return kind_ == TailKind::kConstant ? 0 : 1; }
  int size() const { return kind_ == TailKind::kConstant ? 1 : dim_ + 1; }
  void basis(const Vector& x, Eigen::Ref<Vector> out) const;

 private:
  TailKind kind_;
  int dim_;
};

/// Default diagonal regularization used by the strategies.
inline constexpr double kDefaultRbfEta = 1e-8;
/// Points closer than this (in the model's coordinates) count as duplicates.
inline constexpr double kDuplicateTolerance = 1e-12;

/// RBF interpolant s(x) = sum_i lambda_i phi(|x - x_i|) + p(x).
///
/// Coefficients solve the saddle-point system
///
///   [ 0  P^T ] [ c      ]   [ 0 ]
///   [ P  Phi ] [ lambda ] = [ f ]
///
/// with the tail block ordered first so that new points border the matrix at
/// the bottom-right. Until rank(P) equals the tail size the points are only
/// buffered. The first factorization is a pivoted LU of the whole bordered
/// matrix; every later insertion of k points extends the existing factors
/// with two triangular solves and a k x k Cholesky factorization of the
/// trailing Schur complement, so the cost of an insertion is O(k n^2).
///
/// Regularization adds eta to the diagonal of the kernel block, signed with
/// the kernel's definiteness so that the Schur complements stay positive
/// definite (for the linear kernel this means phi - eta delta_ij).
class RbfSurrogate final : public Surrogate {
 public:
  explicit RbfSurrogate(int dim, Kernel kernel = Kernel(KernelKind::kCubic),
                        TailKind tail = TailKind::kLinear, double eta = 0.0);

  int dim() const override { return dim_; }
  int num_points() const override { return static_cast<int>(x_.rows()); }
  int min_points() const override { return tail_.size(); }
  bool ready() const override { return factored_; }

  /// Rejects non-finite values and points within kDuplicateTolerance of a
  /// stored point (or of each other) with DuplicatePointError.
  void add_points(const Matrix& x, const Vector& fx) override;
  void set_values(const Vector& fx) override;
  void reset() override;

  double predict(const Vector& x) const override;
  Vector predict(const Matrix& x) const override;

  /// Only allowed before the first factorization.
  void set_regularization(double eta);
  double regularization() const { return eta_; }

  const Kernel& kernel() const { return kernel_; }
  const Tail& tail() const { return tail_; }
  const Matrix& points() const override { return x_; }
  const Vector& values() const override { return f_; }
  const Vector& lambda() const { return lambda_; }
  const Vector& tail_coefficients() const { return c_; }

  /// Number of dense LU factorizations performed (1 after the model became
  /// ready, regardless of how many points were inserted afterwards).
  int full_factorizations() const { return full_factorizations_; }
  int incremental_updates() const { return incremental_updates_; }

 private:
  void check_new_points(const Matrix& x, const Vector& fx) const;
  Matrix bordered_block(Eigen::Index first, Eigen::Index count) const;
  void factor_initial();
  void extend(Eigen::Index first_new);
  void solve();

  int dim_;
  Kernel kernel_;
  Tail tail_;
  double eta_;

  Matrix x_;
  Vector f_;

  bool factored_ = false;
  Eigen::Index initial_size_ = 0;  // rows covered by the pivoting permutation
  Eigen::PermutationMatrix<Eigen::Dynamic> perm_;
  Matrix lower_;
  Matrix upper_;

  Vector lambda_;
  Vector c_;

  int full_factorizations_ = 0;
  int incremental_updates_ = 0;
};

}  // namespace sot

#endif  // SOT_RBF_HPP_
