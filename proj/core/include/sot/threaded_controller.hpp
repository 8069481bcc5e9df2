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

#ifndef SOT_THREADED_CONTROLLER_HPP_
#define SOT_THREADED_CONTROLLER_HPP_

#include <future>
#include <limits>
#include <map>
#include <memory>
#include <vector>

#include "sot/controller.hpp"
#include "sot/workers.hpp"

namespace sot {

struct ThreadedOptions {
  /// Wall-clock budget in seconds.
  double time_limit = std::numeric_limits<double>::infinity();
};

/// Real-time controller for a dynamic pool of workers.
///
/// A single event loop owns the strategy and the records; workers report
/// through the mailbox and results are processed in arrival order. Workers
/// may join or leave at any time. A worker that leaves (or is lost) while
/// evaluating turns its record into a failure, which feeds the strategy's
/// retry path.
class ThreadedController final : public Controller {
 public:
  explicit ThreadedController(const Problem& problem, ThreadedOptions options = {});
  ~ThreadedController() override;

  /// Thread-safe. The worker receives work from the next dispatch on.
  void add_worker(std::shared_ptr<Worker> worker);
  /// Thread-safe. Resolves to false when the request is refused: the id is
  /// unknown, or it is the last worker of a run in progress.
  std::future<bool> remove_worker(int id);

  RunResult run(Strategy& strategy) override;

  /// Number of live workers as seen by the event loop.
  int worker_count() const { return static_cast<int>(slots_.size()); }
  Mailbox& mailbox() { return mailbox_; }

 protected:
  int idle_workers() const override;
  int total_workers() const override { return worker_count(); }
  void start(EvalRecord& record) override;
  bool deliver_kill(EvalRecord& record) override;

 private:
  struct Slot {
    std::shared_ptr<Worker> worker;
    RecordId running = -1;
  };

  void handle(WorkerMessage msg, Strategy& strategy);
  void retire(int id);
  void shutdown();
  double elapsed() const;
  int running_count() const;

  ThreadedOptions options_;
  Mailbox mailbox_;
  std::map<int, Slot> slots_;
  std::vector<std::shared_ptr<Worker>> retired_;
  int next_worker_ = 0;
  bool in_run_ = false;
  Mailbox::Clock::time_point t0_;
};

}  // namespace sot

#endif  // SOT_THREADED_CONTROLLER_HPP_
