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

#ifndef SOT_SURROGATE_HPP_
#define SOT_SURROGATE_HPP_

#include <memory>
#include <utility>

#include "sot/problem.hpp"
#include "sot/types.hpp"

namespace sot {

/// Common interface of the surrogate models used by the strategies.
///
/// Points are rows of `x`. A model may buffer points until it has enough of
/// them to be built; `ready()` tells whether `predict` can be called.
class Surrogate {
 public:
  virtual ~Surrogate() = default;

  virtual int dim() const = 0;
  virtual int num_points() const = 0;
  /// Minimum number of points in general position needed before `ready()`.
  virtual int min_points() const = 0;
  virtual bool ready() const = 0;

  virtual void add_points(const Matrix& x, const Vector& fx) = 0;
  /// Replaces the values attached to the stored points (same order).
  virtual void set_values(const Vector& fx) = 0;
  virtual void reset() = 0;

  virtual double predict(const Vector& x) const = 0;
  virtual Vector predict(const Matrix& x) const;

  /// Predictive variance, for models that have one.
  virtual bool has_variance() const { return false; }
  virtual std::pair<double, double> predict_mv(const Vector& x) const;

  virtual const Matrix& points() const = 0;
  virtual const Vector& values() const = 0;
};

/// Affine bijection between a box and [0, 1]^d.
class UnitBoxMap {
 public:
  UnitBoxMap(Vector lower, Vector upper);
  explicit UnitBoxMap(const Problem& problem);

  Vector to_unit(const Vector& x) const;
  Vector from_unit(const Vector& u) const;
  Matrix to_unit_rows(const Matrix& x) const;

  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  const Vector& range() const { return range_; }

 private:
  Vector lower_;
  Vector upper_;
  Vector range_;
};

/// Presents a unit-cube surrogate in the problem's own coordinates.
class RescaledSurrogate final : public Surrogate {
 public:
  RescaledSurrogate(std::unique_ptr<Surrogate> inner, UnitBoxMap map);

  int dim() const override { return inner_->dim(); }
  int num_points() const override { return inner_->num_points(); }
  int min_points() const override { return inner_->min_points(); }
  bool ready() const override { return inner_->ready(); }
  void add_points(const Matrix& x, const Vector& fx) override;
  void set_values(const Vector& fx) override { inner_->set_values(fx); }
  void reset() override;
  double predict(const Vector& x) const override;
  bool has_variance() const override { return inner_->has_variance(); }
  std::pair<double, double> predict_mv(const Vector& x) const override;
  /// Stored points in problem coordinates.
  const Matrix& points() const override { return points_; }
  const Vector& values() const override { return inner_->values(); }

  const Surrogate& inner() const { return *inner_; }
  const UnitBoxMap& map() const { return map_; }

 private:
  std::unique_ptr<Surrogate> inner_;
  UnitBoxMap map_;
  Matrix points_;
};

/// out_i = min(v_i, median(v)); the median of an even count is the midpoint
/// of the two central order statistics.
Vector median_cap(const Vector& values);

/// Feeds median-capped values to the wrapped model. The cap moves as points
/// arrive, so every insertion refreshes all values via `set_values`.
class MedianCapSurrogate final : public Surrogate {
 public:
  explicit MedianCapSurrogate(std::unique_ptr<Surrogate> inner);

  int dim() const override { return inner_->dim(); }
  int num_points() const override { return inner_->num_points(); }
  int min_points() const override { return inner_->min_points(); }
  bool ready() const override { return inner_->ready(); }
  void add_points(const Matrix& x, const Vector& fx) override;
  void set_values(const Vector& fx) override;
  void reset() override;
  double predict(const Vector& x) const override { return inner_->predict(x); }
  Vector predict(const Matrix& x) const override { return inner_->predict(x); }
  bool has_variance() const override { return inner_->has_variance(); }
  std::pair<double, double> predict_mv(const Vector& x) const override {
    return inner_->predict_mv(x);
  }
  const Matrix& points() const override { return inner_->points(); }
  /// Raw (uncapped) values.
  const Vector& values() const override { return raw_; }

  const Surrogate& inner() const { return *inner_; }

 private:
  std::unique_ptr<Surrogate> inner_;
  Vector raw_;
};

}  // namespace sot

#endif  // SOT_SURROGATE_HPP_
