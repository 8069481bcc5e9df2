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

#ifndef SOT_GP_HPP_
#define SOT_GP_HPP_

#include <array>
#include <cstdint>
#include <utility>

#include "sot/surrogate.hpp"
#include "sot/types.hpp"

namespace sot {

/// Squared-exponential hyper-parameters: k(x, y) = signal_var *
/// exp(-0.5 |x - y|^2 / length_scale^2), plus noise_var on the diagonal.
struct GpHyper {
  double length_scale = 0.2;
  double signal_var = 1.0;
  double noise_var = 1e-8;

  std::array<double, 3> log() const;
  static GpHyper from_log(const std::array<double, 3>& v);
};

inline constexpr double kGpNoiseFloor = 1e-8;

struct GpFitOptions {
  int starts = 10;
  int max_iterations = 60;
  std::uint64_t seed = 0x9b5a11edULL;
};

/// Box for the hyper-parameter search, in natural (not log) units.
struct GpHyperBounds {
  double length_min = 1e-2, length_max = 2.0;
  double signal_min = 1e-3, signal_max = 10.0;
  double noise_min = kGpNoiseFloor, noise_max = 1e-2;

  /// Signal and noise ranges scale with the sample variance of y (a
  /// constant y falls back to unit variance).
  static GpHyperBounds for_data(const Vector& y);
};

/// Gaussian-process regression with a constant mean (the data mean) and an
/// isotropic squared-exponential kernel. Caches the Cholesky factor of
/// K + noise I and alpha = (K + noise I)^{-1} (y - mu).
class GpModel {
 public:
  GpModel() = default;

  /// Fits the hyper-parameters by multi-start projected gradient ascent on
  /// the log marginal likelihood over the box from `GpHyperBounds`.
  static GpModel fit(const Matrix& x, const Vector& y, const GpFitOptions& options = {});

  /// Conditions on the data at fixed hyper-parameters. The noise variance
  /// is floored at kGpNoiseFloor.
  static GpModel with_hyper(const Matrix& x, const Vector& y, const GpHyper& hyper);

  double log_marginal_likelihood() const { return lml_; }
  /// Gradient of the log marginal likelihood with respect to
  /// (log length_scale, log signal_var, log noise_var).
  std::array<double, 3> lml_gradient() const;

  /// Posterior mean and variance; the variance is clamped at zero.
  std::pair<double, double> predict_mv(const Vector& x) const;
  double predict_mean(const Vector& x) const;

  const GpHyper& hyper() const { return hyper_; }
  double mean() const { return mu_; }
  int num_points() const { return static_cast<int>(x_.rows()); }
  bool fitted() const { return fitted_; }
  /// Cholesky factorizations performed to produce this model.
  int factorizations() const { return factorizations_; }

 private:
  bool condition(const Matrix& x, const Vector& y, const GpHyper& hyper);

  Matrix x_;
  Vector y_;
  GpHyper hyper_;
  double mu_ = 0.0;
  Eigen::LLT<Matrix> chol_;
  Vector alpha_;
  double lml_ = 0.0;
  bool fitted_ = false;
  int factorizations_ = 0;
};

/// Surrogate adapter: refits the GP after every insertion.
class GpSurrogate final : public Surrogate {
 public:
  explicit GpSurrogate(int dim, GpFitOptions options = {});

  int dim() const override { return dim_; }
  int num_points() const override { return static_cast<int>(x_.rows()); }
  int min_points() const override { return 2; }
  bool ready() const override { return model_.fitted(); }
  void add_points(const Matrix& x, const Vector& fx) override;
  void set_values(const Vector& fx) override;
  void reset() override;
  double predict(const Vector& x) const override;
  bool has_variance() const override { return true; }
  std::pair<double, double> predict_mv(const Vector& x) const override;
  const Matrix& points() const override { return x_; }
  const Vector& values() const override { return f_; }

  const GpModel& model() const { return model_; }

 private:
  void refit();

  int dim_;
  GpFitOptions options_;
  Matrix x_;
  Vector f_;
  GpModel model_;
};

}  // namespace sot

#endif  // SOT_GP_HPP_
