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

#include "sot/surrogate.hpp"

#include <algorithm>
#include <vector>

namespace sot {

Vector Surrogate::predict(const Matrix& x) const {
  Vector out(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) out[i] = predict(Vector(x.row(i).transpose()));
  return out;
}

std::pair<double, double> Surrogate::predict_mv(const Vector&) const {
  throw UnsupportedOperationError("surrogate has no predictive variance");
}

UnitBoxMap::UnitBoxMap(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)), range_(upper_ - lower_) {
  if (lower_.size() != upper_.size()) throw ConfigError("bound sizes differ");
  if ((range_.array() <= 0.0).any()) throw ConfigError("degenerate box");
}

UnitBoxMap::UnitBoxMap(const Problem& problem) : UnitBoxMap(problem.lower(), problem.upper()) {}

Vector UnitBoxMap::to_unit(const Vector& x) const { return (x - lower_).cwiseQuotient(range_); }

Vector UnitBoxMap::from_unit(const Vector& u) const { return lower_ + u.cwiseProduct(range_); }

Matrix UnitBoxMap::to_unit_rows(const Matrix& x) const {
  Matrix out = x;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    out.row(i) = to_unit(x.row(i).transpose()).transpose();
  return out;
}

RescaledSurrogate::RescaledSurrogate(std::unique_ptr<Surrogate> inner, UnitBoxMap map)
    : inner_(std::move(inner)), map_(std::move(map)), points_(0, map_.lower().size()) {
  if (!inner_) throw ConfigError("null surrogate");
  if (inner_->dim() != map_.lower().size()) throw ConfigError("map dimension mismatch");
}

void RescaledSurrogate::add_points(const Matrix& x, const Vector& fx) {
  inner_->add_points(map_.to_unit_rows(x), fx);
  const Eigen::Index n = points_.rows();
  points_.conservativeResize(n + x.rows(), Eigen::NoChange);
  points_.bottomRows(x.rows()) = x;
}

void RescaledSurrogate::reset() {
  inner_->reset();
  points_.resize(0, map_.lower().size());
}

double RescaledSurrogate::predict(const Vector& x) const {
  return inner_->predict(map_.to_unit(x));
}

std::pair<double, double> RescaledSurrogate::predict_mv(const Vector& x) const {
  return inner_->predict_mv(map_.to_unit(x));
}

Vector median_cap(const Vector& values) {
  if (values.size() == 0) throw ConfigError("median cap needs at least one value");
  std::vector<double> sorted(values.data(), values.data() + values.size());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double med = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return values.cwiseMin(med);
}

MedianCapSurrogate::MedianCapSurrogate(std::unique_ptr<Surrogate> inner)
    : inner_(std::move(inner)) {
  if (!inner_) throw ConfigError("null surrogate");
}

void MedianCapSurrogate::add_points(const Matrix& x, const Vector& fx) {
  Vector raw(raw_.size() + fx.size());
  raw << raw_, fx;
  const Vector capped = median_cap(raw);
  inner_->add_points(x, capped.tail(fx.size()));
  raw_ = std::move(raw);
  inner_->set_values(capped);
}

void MedianCapSurrogate::set_values(const Vector& fx) {
  raw_ = fx;
  inner_->set_values(median_cap(raw_));
}

void MedianCapSurrogate::reset() {
  inner_->reset();
  raw_.resize(0);
}

}  // namespace sot
