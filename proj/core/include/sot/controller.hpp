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

#ifndef SOT_CONTROLLER_HPP_
#define SOT_CONTROLLER_HPP_

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sot/problem.hpp"
#include "sot/record.hpp"
#include "sot/strategy.hpp"

namespace sot {

struct RunResult {
  Vector x_best;
  double f_best = 0.0;
  ProgressTrace trace;
  std::vector<EvalRecord> records;
  /// True if the strategy ended the run; false if a time limit did.
  bool terminated = false;
  double end_time = 0.0;
};

/// Record bookkeeping and the proposal loop shared by the controllers.
///
/// Records move pending -> running -> {completed, killed, failed} exactly
/// once. Every eval proposal is either rejected (bad point, no idle worker)
/// or turned into a record.
class Controller {
 public:
  explicit Controller(const Problem& problem);
  virtual ~Controller() = default;
  Controller(const Controller&) = delete;
  Controller& operator=(const Controller&) = delete;

  virtual RunResult run(Strategy& strategy) = 0;

  /// Called whenever records or the strategy may have changed.
  void set_change_hook(std::function<void()> hook) { hook_ = std::move(hook); }

  const Problem& problem() const { return problem_; }
  const std::vector<EvalRecord>& records() const { return records_; }
  const EvalRecord& record(RecordId id) const;
  const ProgressTrace& trace() const { return trace_; }
  double best_value() const { return best_f_; }
  const Vector& best_point() const { return best_x_; }

  virtual nlohmann::json save_state() const;
  virtual void restore_state(const nlohmann::json& state);
  /// Whether in-flight evaluations survive a save/restore cycle. When they
  /// do not, the strategy must re-queue them.
  virtual bool restores_in_flight() const { return false; }

 protected:
  virtual int idle_workers() const = 0;
  virtual int total_workers() const = 0;
  /// Hands a freshly accepted record to an idle worker.
  virtual void start(EvalRecord& record) = 0;
  /// Delivers a kill request for a running record. Returns true if the
  /// evaluation stopped on the spot; the worker may also ignore the request
  /// or report back later.
  virtual bool deliver_kill(EvalRecord& record) = 0;

  /// Asks the strategy for proposals until it has none. Returns true if it
  /// asked to terminate.
  bool drain(Strategy& strategy, double now);

  void complete(RecordId id, double value, double t, Strategy& strategy);
  void fail(RecordId id, const std::string& reason, double t, Strategy& strategy);
  void mark_killed(RecordId id, double t, Strategy& strategy);
  void update(RecordId id, double value, Strategy& strategy);

  EvalRecord& mutable_record(RecordId id);
  void changed();
  RunResult result(bool terminated, double end_time) const;

  const Problem& problem_;
  std::vector<EvalRecord> records_;
  ProgressTrace trace_;
  double best_f_;
  Vector best_x_;

 private:
  void finish(EvalRecord& rec, EvalStatus status, double t, Strategy& strategy);

  std::function<void()> hook_;
};

/// Evaluates each proposal inline, one at a time. Timestamps are wall-clock
/// seconds since the start of the run.
class SerialController final : public Controller {
 public:
  explicit SerialController(const Problem& problem) : Controller(problem) {}

  RunResult run(Strategy& strategy) override;

 protected:
  int idle_workers() const override { return running_ < 0 ? 1 : 0; }
  int total_workers() const override { return 1; }
  void start(EvalRecord& record) override;
  bool deliver_kill(EvalRecord& /*record*/) override { return false; }

 private:
  RecordId running_ = -1;
  double now_ = 0.0;
};

}  // namespace sot

#endif  // SOT_CONTROLLER_HPP_
