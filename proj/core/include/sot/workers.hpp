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

#ifndef SOT_WORKERS_HPP_
#define SOT_WORKERS_HPP_

#include <chrono>
#include <condition_variable>
#include <deque>
#include <functional>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "sot/record.hpp"

namespace sot {

class Worker;

/// Status update travelling from a worker (or any other thread) to the
/// controller's event loop.
struct WorkerMessage {
  enum class Kind { kResult, kUpdate, kFailed, kKilled, kGone, kAdd, kRemove };

  Kind kind = Kind::kGone;
  int worker = -1;
  RecordId id = -1;
  double value = 0.0;
  std::string reason;
  std::shared_ptr<Worker> added;
  std::shared_ptr<std::promise<bool>> reply;
};

/// Multi-producer, single-consumer message queue.
class Mailbox {
 public:
  using Clock = std::chrono::steady_clock;

  void post(WorkerMessage msg);
  std::optional<WorkerMessage> try_pop();
  /// Blocks until a message arrives or `deadline` passes.
  std::optional<WorkerMessage> wait_until(Clock::time_point deadline);

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<WorkerMessage> queue_;
};

/// An execution context that evaluates one point at a time. Workers talk to
/// the controller only through the mailbox; they never touch records.
class Worker {
 public:
  virtual ~Worker() = default;

  virtual std::string name() const = 0;
  /// Called once by the controller. Messages must carry `id`.
  virtual void start(int id, Mailbox& mailbox) = 0;
  virtual void assign(RecordId record, const Vector& x) = 0;
  /// Kill request for `record`. Workers may ignore it.
  virtual void kill(RecordId record) = 0;
  /// Stops the worker and waits for its execution context to end.
  virtual void stop() = 0;
};

/// Runs an in-process objective on a dedicated thread. Exceptions and
/// non-finite values are reported as failures. Kills cannot interrupt the
/// objective; an honored kill turns the eventual result into KILLED.
class ThreadWorker : public Worker {
 public:
  using Objective = std::function<double(const Vector&)>;

  ThreadWorker(std::string name, Objective objective, bool honor_kills = true);
  ~ThreadWorker() override;

  std::string name() const override { return name_; }
  void start(int id, Mailbox& mailbox) override;
  void assign(RecordId record, const Vector& x) override;
  void kill(RecordId record) override;
  void stop() override;

 private:
  void loop();

  std::string name_;
  Objective objective_;
  bool honor_kills_;
  int id_ = -1;
  Mailbox* mailbox_ = nullptr;
  std::mutex mu_;
  std::condition_variable cv_;
  std::optional<std::pair<RecordId, Vector>> job_;
  RecordId current_ = -1;
  bool cancel_ = false;
  bool stop_ = false;
  std::thread thread_;
};

/// Last whitespace-separated token of `text` that parses as a float.
std::optional<double> last_float(std::string_view text);

/// Substitutes `{x}` in `command_template` by the space-separated
/// coordinates of x, runs the command through the shell and returns the last
/// parseable float on its standard output. Throws std::runtime_error on a
/// non-zero exit status or when no number is printed.
double run_subprocess_objective(const std::string& command_template, const Vector& x);

/// A ThreadWorker whose objective is an external command.
std::shared_ptr<Worker> make_subprocess_worker(std::string name, std::string command_template,
                                               bool honor_kills = true);

}  // namespace sot

#endif  // SOT_WORKERS_HPP_
