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

#ifndef SOT_SURROGATE_STRATEGY_HPP_
#define SOT_SURROGATE_STRATEGY_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sot/acquisition.hpp"
#include "sot/candidates.hpp"
#include "sot/design.hpp"
#include "sot/gp.hpp"
#include "sot/problem.hpp"
#include "sot/rbf.hpp"
#include "sot/sampling.hpp"
#include "sot/strategy.hpp"
#include "sot/surrogate.hpp"

namespace sot {

enum class Mode { kSerial, kSync, kAsync };
enum class StrategyKind { kSrbf, kDycors, kUniform, kEi, kPi, kLcb };
enum class SurrogateKind { kRbf, kGp };

std::string to_string(Mode mode);
Mode mode_from_string(std::string_view name);
std::string to_string(StrategyKind kind);
StrategyKind strategy_kind_from_string(std::string_view name);
std::string to_string(SurrogateKind kind);
SurrogateKind surrogate_kind_from_string(std::string_view name);

struct StrategyConfig {
  Mode mode = Mode::kAsync;
  /// Parallel evaluations p. Serial mode forces 1.
  int workers = 1;
  int max_evals = 100;
  StrategyKind strategy = StrategyKind::kDycors;
  SurrogateKind surrogate = SurrogateKind::kRbf;
  KernelKind kernel = KernelKind::kCubic;
  TailKind tail = TailKind::kLinear;
  double eta = kDefaultRbfEta;
  bool median_cap = false;
  GpFitOptions gp;
  DesignKind design = DesignKind::kSlhd;
  /// 0 selects 2(d + 1). Always raised to at least p + q_min - 1.
  int design_size = 0;
  /// 0 selects 100 d.
  int num_candidates = 0;
  std::vector<double> weights{WeightCycle::kDefaultPattern.begin(),
                              WeightCycle::kDefaultPattern.end()};
  double dist_tol = kDefaultDistanceTolerance;
  AcquisitionParams acquisition;
  int max_retries = 1;
  bool restarts = true;
  /// Unset selects SamplingParams::defaults(d, p).
  std::optional<SamplingParams> sampling;
  std::uint64_t seed = 0;
};

enum class Phase { kInitial, kAdaptive, kDone };

std::string to_string(Phase phase);

/// Builds the unit-cube surrogate described by `config`.
std::unique_ptr<Surrogate> make_surrogate(const StrategyConfig& config, int dim);

/// Number of points the surrogate needs before it can be built (q_min).
int surrogate_min_points(const StrategyConfig& config, int dim);

/// Initial design size for `config` on a `dim`-dimensional problem.
int design_size_for(const StrategyConfig& config, int dim);

/// Surrogate optimization in serial, batch-synchronous or asynchronous mode.
///
/// The strategy first proposes an experimental design. Once no design point
/// is outstanding it switches to adaptive proposals: in async and serial mode
/// one point per idle worker, in sync mode a batch of p points that is only
/// refilled after every evaluation of the previous batch has finished. The
/// surrogate is refit lazily, right before points are selected.
///
/// Completed adaptive evaluations drive the sampling radius. When the radius
/// sits at its floor and progress has stalled, the run restarts from a fresh
/// design and an empty surrogate. Evaluations still in flight from an older
/// run only count toward the budget and the reported best.
///
/// Every dispatched evaluation consumes budget, including failures; a failed
/// point is retried up to `max_retries` times.
class SurrogateStrategy final : public Strategy {
 public:
  SurrogateStrategy(const Problem& problem, StrategyConfig config);

  std::optional<Proposal> propose(const ProposeContext& ctx) override;
  void on_record(const EvalRecord& record) override;

  nlohmann::json save_state() const override;
  void restore_state(const nlohmann::json& state, bool requeue_pending) override;

  const StrategyConfig& config() const { return config_; }
  const SamplingParams& sampling_params() const { return params_; }
  const SamplingState& sampling_state() const { return state_; }
  Phase phase() const;
  int design_size() const { return n0_; }
  int budget_used() const { return dispatched_; }
  int completed() const { return completed_; }
  int failed() const { return failed_; }
  int restarts() const { return run_; }
  int pending() const { return static_cast<int>(pending_.size()); }
  int queued() const { return static_cast<int>(queue_.size()); }
  /// Best value over every completed evaluation, all runs included.
  double best_value() const { return best_f_; }
  const Vector& best_point() const { return best_x_; }
  /// Evaluated points of the current run, in unit coordinates.
  const Matrix& run_points() const { return run_x_; }
  const Vector& run_values() const { return run_f_; }
  const Surrogate& surrogate() const { return *surrogate_; }
  /// Merit weight position (advances by one per selected point).
  int weight_position() const { return weights_.position(); }

 private:
  struct Item {
    Vector x;  // problem coordinates
    int retries = 0;
    bool design = false;
    int run = 0;
  };
  struct InFlight {
    Item item;
    std::int64_t epoch = 0;
  };

  void queue_design();
  void restart();
  Proposal dispatch(Item item);
  std::vector<Item> generate(int count);
  void feed_surrogate();
  void feed_to(int n);
  int remaining() const;
  int design_outstanding() const;
  Matrix occupied_points() const;
  Vector to_problem(const Vector& u) const;
  bool duplicates_run_point(const Vector& u) const;

  const Problem& problem_;
  StrategyConfig config_;
  UnitBoxMap map_;
  SamplingParams params_;
  int n0_ = 0;
  int num_cand_ = 0;
  bool acquisition_ = false;

  Rng rng_;
  std::unique_ptr<Surrogate> surrogate_;
  WeightCycle weights_;
  SamplingState state_;

  std::deque<Item> queue_;
  std::map<RecordId, InFlight> pending_;
  Matrix run_x_;
  Vector run_f_;
  std::vector<int> feed_history_;
  int fed_ = 0;

  int run_ = 0;
  int dispatched_ = 0;
  int completed_ = 0;
  int failed_ = 0;
  int killed_ = 0;
  int rejected_ = 0;
  double best_f_;
  Vector best_x_;
  bool terminate_sent_ = false;
  bool terminated_ = false;
};

}  // namespace sot

#endif  // SOT_SURROGATE_STRATEGY_HPP_
