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

#ifndef SOT_PROBLEM_HPP_
#define SOT_PROBLEM_HPP_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sot/types.hpp"

namespace sot {

struct KnownOptimum {
  double value = 0.0;
  Vector location;
};

/// A box-constrained, possibly mixed-integer, minimization problem.
///
/// The problem is immutable after construction; `evaluate` is reentrant and
/// may be called concurrently from several workers.
class Problem {
 public:
  using Objective = std::function<double(const Vector&)>;

  Problem(std::string name, Vector lower, Vector upper, Objective objective,
          std::vector<int> int_indices = {},
          std::optional<KnownOptimum> optimum = std::nullopt);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(lower_.size()); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  const std::vector<int>& int_indices() const { return int_indices_; }
  bool is_integer(int i) const { return is_int_[static_cast<std::size_t>(i)]; }
  const std::optional<KnownOptimum>& optimum() const { return optimum_; }

  /// True if x has the right dimension, lies in the box and is integral on
  /// the integer coordinates.
  bool contains(const Vector& x) const;

  /// Evaluates the objective. Points outside the domain raise DomainError;
  /// they are never clamped.
  double evaluate(const Vector& x) const;

 private:
  std::string name_;
  Vector lower_;
  Vector upper_;
  Objective objective_;
  std::vector<int> int_indices_;
  std::vector<bool> is_int_;
  std::optional<KnownOptimum> optimum_;
};

/// Names accepted by `make_problem`.
std::vector<std::string> problem_names();

/// Builds a catalog problem on [-5, 5]^dim.
///
/// `instance` 0 keeps the textbook optimum location; any positive instance
/// translates the optimum by a seeded offset drawn from [-4, 4]^dim, so the
/// same instance number always yields the same problem. The first
/// `num_int` coordinates are declared integer (their optimum offsets are
/// rounded so the optimum stays feasible).
Problem make_problem(std::string_view name, int dim, int instance = 0,
                     int num_int = 0);

/// One unshifted instance of every catalog problem at dimension `dim`.
std::vector<Problem> problem_catalog(int dim);

}  // namespace sot

#endif  // SOT_PROBLEM_HPP_
