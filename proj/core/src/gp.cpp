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

#include "sot/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sot {

std::array<double, 3> GpHyper::log() const {
  return {std::log(length_scale), std::log(signal_var), std::log(noise_var)};
}

GpHyper GpHyper::from_log(const std::array<double, 3>& v) {
  return {std::exp(v[0]), std::exp(v[1]), std::exp(v[2])};
}

GpHyperBounds GpHyperBounds::for_data(const Vector& y) {
  GpHyperBounds b;
  double var = 0.0;
  if (y.size() > 1) var = (y.array() - y.mean()).square().mean();
  if (!(var > 1e-12 * std::max(1.0, y.squaredNorm() / static_cast<double>(y.size())))) var = 1.0;
  b.signal_min = 1e-3 * var;
  b.signal_max = 10.0 * var;
  b.noise_max = std::max(1e-2 * var, 10.0 * kGpNoiseFloor);
  return b;
}

namespace {

Matrix se_kernel(const Matrix& x, double length, double signal) {
  const Eigen::Index n = x.rows();
  Matrix k(n, n);
  const double inv = 0.5 / (length * length);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = signal;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = signal * std::exp(-inv * (x.row(i) - x.row(j)).squaredNorm());
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

}  // namespace

bool GpModel::condition(const Matrix& x, const Vector& y, const GpHyper& hyper) {
  x_ = x;
  y_ = y;
  hyper_ = hyper;
  hyper_.noise_var = std::max(hyper_.noise_var, kGpNoiseFloor);
  mu_ = y.mean();
  Matrix k = se_kernel(x, hyper_.length_scale, hyper_.signal_var);
  k.diagonal().array() += hyper_.noise_var;
  chol_.compute(k);
  ++factorizations_;
  if (chol_.info() != Eigen::Success) return false;
  const Vector r = y.array() - mu_;
  alpha_ = chol_.solve(r);
  const Matrix& l = chol_.matrixLLT();
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) logdet += std::log(l(i, i));
  logdet *= 2.0;
  const double n = static_cast<double>(y.size());
  lml_ = -0.5 * (r.dot(alpha_) + logdet + n * std::log(2.0 * std::numbers::pi));
  if (!std::isfinite(lml_)) return false;
  fitted_ = true;
  return true;
}

GpModel GpModel::with_hyper(const Matrix& x, const Vector& y, const GpHyper& hyper) {
  if (x.rows() != y.size()) throw ConfigError("point and value counts differ");
  if (y.size() < 1) throw ConfigError("GP needs data");
  if (!y.allFinite()) throw ConfigError("non-finite GP data");
  GpModel m;
  if (!m.condition(x, y, hyper)) throw NumericalError("GP kernel matrix is not positive definite");
  return m;
}

std::array<double, 3> GpModel::lml_gradient() const {
  if (!fitted_) throw NotReadyError("GP is not fitted");
  const Eigen::Index n = x_.rows();
  const Matrix kinv = chol_.solve(Matrix::Identity(n, n));
  const Matrix w = alpha_ * alpha_.transpose() - kinv;
  const double ell2 = hyper_.length_scale * hyper_.length_scale;
  double g_len = 0.0;
  double g_sig = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    g_sig += w(i, i) * hyper_.signal_var;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double r2 = (x_.row(i) - x_.row(j)).squaredNorm();
      const double kse = hyper_.signal_var * std::exp(-0.5 * r2 / ell2);
      g_sig += 2.0 * w(i, j) * kse;
      g_len += 2.0 * w(i, j) * kse * r2 / ell2;
    }
  }
  const double g_noise = w.trace() * hyper_.noise_var;
  return {0.5 * g_len, 0.5 * g_sig, 0.5 * g_noise};
}

GpModel GpModel::fit(const Matrix& x, const Vector& y, const GpFitOptions& options) {
  if (x.rows() != y.size()) throw ConfigError("point and value counts differ");
  if (y.size() < 2) throw ConfigError("GP fit needs at least two points");
  if (!y.allFinite()) throw ConfigError("non-finite GP data");

  GpHyperBounds bounds = GpHyperBounds::for_data(y);
  Rng rng(options.seed);
  int total_factorizations = 0;

  for (int raise = 0; raise < 8; ++raise) {
    const std::array<double, 3> lo = {std::log(bounds.length_min), std::log(bounds.signal_min),
                                      std::log(bounds.noise_min)};
    const std::array<double, 3> hi = {std::log(bounds.length_max), std::log(bounds.signal_max),
                                      std::log(bounds.noise_max)};
    auto project = [&](std::array<double, 3> v) {
      for (int i = 0; i < 3; ++i) v[i] = std::clamp(v[i], lo[i], hi[i]);
      return v;
    };
    auto evaluate = [&](const std::array<double, 3>& v, GpModel& out) {
      out = GpModel();
      const bool ok = out.condition(x, y, GpHyper::from_log(v));
      total_factorizations += out.factorizations_;
      return ok;
    };

    GpModel best;
    double best_lml = -std::numeric_limits<double>::infinity();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < std::max(1, options.starts); ++s) {
      std::array<double, 3> theta;
      for (int i = 0; i < 3; ++i)
        theta[i] = s == 0 ? 0.5 * (lo[i] + hi[i]) : lo[i] + unit(rng) * (hi[i] - lo[i]);
      GpModel cur;
      if (!evaluate(theta, cur)) continue;
      double step = 1.0;
      for (int it = 0; it < options.max_iterations && step > 1e-8; ++it) {
        const auto g = cur.lml_gradient();
        bool moved = false;
        while (step > 1e-8) {
          std::array<double, 3> trial;
          for (int i = 0; i < 3; ++i) trial[i] = theta[i] + step * g[i];
          trial = project(trial);
          if (trial == theta) break;
          GpModel cand;
          if (evaluate(trial, cand) && cand.lml_ > cur.lml_) {
            theta = trial;
            cur = std::move(cand);
            step *= 2.0;
            moved = true;
            break;
          }
          step *= 0.5;
        }
        if (!moved) break;
      }
      if (cur.lml_ > best_lml) {
        best_lml = cur.lml_;
        best = std::move(cur);
      }
    }
    if (best.fitted_) {
      best.factorizations_ = total_factorizations;
      return best;
    }
    // Every candidate broke down: raise the noise floor and try again.
    bounds.noise_min *= 100.0;
    bounds.noise_max = std::max(bounds.noise_max, 10.0 * bounds.noise_min);
  }
  throw NumericalError("GP fit failed for every hyper-parameter candidate");
}

std::pair<double, double> GpModel::predict_mv(const Vector& x) const {
  if (!fitted_) throw NotReadyError("GP is not fitted");
  const Eigen::Index n = x_.rows();
  Vector ks(n);
  const double inv = 0.5 / (hyper_.length_scale * hyper_.length_scale);
  for (Eigen::Index i = 0; i < n; ++i)
    ks[i] = hyper_.signal_var * std::exp(-inv * (x_.row(i).transpose() - x).squaredNorm());
  const double mean = mu_ + ks.dot(alpha_);
  const Vector v = chol_.matrixL().solve(ks);
  const double var = std::max(0.0, hyper_.signal_var - v.squaredNorm());
  return {mean, var};
}

double GpModel::predict_mean(const Vector& x) const {
  if (!fitted_) throw NotReadyError("GP is not fitted");
  const double inv = 0.5 / (hyper_.length_scale * hyper_.length_scale);
  double s = mu_;
  for (Eigen::Index i = 0; i < x_.rows(); ++i)
    s += alpha_[i] * hyper_.signal_var * std::exp(-inv * (x_.row(i).transpose() - x).squaredNorm());
  return s;
}

GpSurrogate::GpSurrogate(int dim, GpFitOptions options)
    : dim_(dim), options_(options), x_(0, dim) {
  if (dim < 1) throw ConfigError("surrogate dimension must be positive");
}

void GpSurrogate::add_points(const Matrix& x, const Vector& fx) {
  if (x.cols() != dim_) throw ConfigError("point dimension mismatch");
  if (x.rows() != fx.size()) throw ConfigError("point and value counts differ");
  if (!fx.allFinite()) throw ConfigError("non-finite function value");
  const Eigen::Index n = x_.rows();
  x_.conservativeResize(n + x.rows(), Eigen::NoChange);
  x_.bottomRows(x.rows()) = x;
  f_.conservativeResize(n + fx.size());
  f_.tail(fx.size()) = fx;
  refit();
}

void GpSurrogate::set_values(const Vector& fx) {
  if (fx.size() != x_.rows()) throw ConfigError("value count does not match stored points");
  f_ = fx;
  refit();
}

void GpSurrogate::reset() {
  x_.resize(0, dim_);
  f_.resize(0);
  model_ = GpModel();
}

void GpSurrogate::refit() {
  if (x_.rows() >= min_points()) model_ = GpModel::fit(x_, f_, options_);
}

double GpSurrogate::predict(const Vector& x) const { return model_.predict_mean(x); }

std::pair<double, double> GpSurrogate::predict_mv(const Vector& x) const {
  return model_.predict_mv(x);
}

}  // namespace sot
