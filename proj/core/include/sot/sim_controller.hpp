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

#ifndef SOT_SIM_CONTROLLER_HPP_
#define SOT_SIM_CONTROLLER_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "sot/controller.hpp"

namespace sot {

/// Draws one evaluation duration (must be > 0).
using TimeModel = std::function<double(Rng&)>;

TimeModel constant_time(double duration);

struct SimOptions {
  int workers = 1;
  /// Simulated time budget; evaluations that would finish later are killed.
  double t_max = std::numeric_limits<double>::infinity();
  /// Seed of the duration stream, independent of the strategy's randomness.
  std::uint64_t seed = 0;
  bool honor_kills = true;
};

/// Deterministic discrete-event controller.
///
/// Objective values are computed when an evaluation is dispatched and
/// delivered at now + duration. Completions are processed in (time, dispatch
/// sequence) order, so identical inputs give bit-identical traces. Time spent
/// inside the strategy is not simulated.
class SimController final : public Controller {
 public:
  SimController(const Problem& problem, TimeModel time_model, SimOptions options);

  RunResult run(Strategy& strategy) override;

  /// Makes the evaluation of a record fail when the hook returns true.
  void set_failure_hook(std::function<bool(const EvalRecord&)> hook) {
    failure_hook_ = std::move(hook);
  }

  double now() const { return now_; }
  const SimOptions& options() const { return options_; }

  nlohmann::json save_state() const override;
  void restore_state(const nlohmann::json& state) override;
  bool restores_in_flight() const override { return true; }

 protected:
  int idle_workers() const override;
  int total_workers() const override { return options_.workers; }
  void start(EvalRecord& record) override;
  bool deliver_kill(EvalRecord& record) override;

 private:
  struct Event {
    RecordId id = -1;
    int worker = -1;
    double value = 0.0;
    bool failed = false;
    std::string reason;
  };
  using Key = std::pair<double, std::int64_t>;

  TimeModel time_model_;
  SimOptions options_;
  Rng time_rng_;
  double now_ = 0.0;
  std::int64_t seq_ = 0;
  std::map<Key, Event> events_;
  std::vector<RecordId> busy_;  // record per worker, -1 when idle
  std::function<bool(const EvalRecord&)> failure_hook_;
};

}  // namespace sot

#endif  // SOT_SIM_CONTROLLER_HPP_
