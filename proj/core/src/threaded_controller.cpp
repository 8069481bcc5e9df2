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

#include "sot/threaded_controller.hpp"

#include <cmath>

namespace sot {

ThreadedController::ThreadedController(const Problem& problem, ThreadedOptions options)
    : Controller(problem), options_(options) {
  if (!(options_.time_limit > 0.0)) throw ConfigError("time limit must be positive");
}

ThreadedController::~ThreadedController() { shutdown(); }

void ThreadedController::add_worker(std::shared_ptr<Worker> worker) {
  if (!worker) throw ConfigError("null worker");
  WorkerMessage m;
  m.kind = WorkerMessage::Kind::kAdd;
  m.added = std::move(worker);
  mailbox_.post(std::move(m));
}

std::future<bool> ThreadedController::remove_worker(int id) {
  WorkerMessage m;
  m.kind = WorkerMessage::Kind::kRemove;
  m.worker = id;
  m.reply = std::make_shared<std::promise<bool>>();
  auto fut = m.reply->get_future();
  mailbox_.post(std::move(m));
  return fut;
}

int ThreadedController::idle_workers() const {
  int n = 0;
  for (const auto& [id, slot] : slots_) n += slot.running < 0;
  return n;
}

int ThreadedController::running_count() const {
  return static_cast<int>(slots_.size()) - idle_workers();
}

double ThreadedController::elapsed() const {
  return std::chrono::duration<double>(Mailbox::Clock::now() - t0_).count();
}

void ThreadedController::start(EvalRecord& record) {
  for (auto& [id, slot] : slots_) {
    if (slot.running >= 0) continue;
    slot.running = record.id;
    record.worker = id;
    slot.worker->assign(record.id, record.x);
    return;
  }
  throw ProtocolError("no idle worker");
}

bool ThreadedController::deliver_kill(EvalRecord& record) {
  const auto it = slots_.find(record.worker);
  if (it != slots_.end() && it->second.running == record.id) it->second.worker->kill(record.id);
  return false;
}

void ThreadedController::retire(int id) {
  auto it = slots_.find(id);
  if (it == slots_.end()) return;
  retired_.push_back(std::move(it->second.worker));
  slots_.erase(it);
}

void ThreadedController::handle(WorkerMessage msg, Strategy& strategy) {
  using Kind = WorkerMessage::Kind;
  const double now = elapsed();
  switch (msg.kind) {
    case Kind::kAdd: {
      const int id = next_worker_++;
      msg.added->start(id, mailbox_);
      slots_.emplace(id, Slot{std::move(msg.added), -1});
      return;
    }
    case Kind::kRemove: {
      auto it = slots_.find(msg.worker);
      const bool refuse = it == slots_.end() || (in_run_ && slots_.size() == 1);
      if (!refuse) {
        const RecordId abandoned = it->second.running;
        if (abandoned >= 0) it->second.worker->kill(abandoned);
        retire(msg.worker);
        if (abandoned >= 0) fail(abandoned, "worker-removed", now, strategy);
      }
      if (msg.reply) msg.reply->set_value(!refuse);
      return;
    }
    case Kind::kGone: {
      auto it = slots_.find(msg.worker);
      if (it == slots_.end()) return;
      const RecordId lost = it->second.running;
      retire(msg.worker);
      if (lost >= 0 && !record(lost).terminal())
        fail(lost, msg.reason.empty() ? "worker-lost" : msg.reason, now, strategy);
      return;
    }
    case Kind::kUpdate: {
      auto it = slots_.find(msg.worker);
      if (it != slots_.end() && it->second.running == msg.id) update(msg.id, msg.value, strategy);
      return;
    }
    case Kind::kResult:
    case Kind::kFailed:
    case Kind::kKilled: {
      auto it = slots_.find(msg.worker);
      if (it == slots_.end() || it->second.running != msg.id) return;  // stale
      it->second.running = -1;
      if (record(msg.id).terminal()) return;
      if (msg.kind == Kind::kResult)
        complete(msg.id, msg.value, now, strategy);
      else if (msg.kind == Kind::kFailed)
        fail(msg.id, msg.reason, now, strategy);
      else
        mark_killed(msg.id, now, strategy);
      return;
    }
  }
}

RunResult ThreadedController::run(Strategy& strategy) {
  t0_ = Mailbox::Clock::now();
  const auto deadline =
      std::isfinite(options_.time_limit)
          ? t0_ + std::chrono::duration_cast<Mailbox::Clock::duration>(
                      std::chrono::duration<double>(options_.time_limit))
          : Mailbox::Clock::time_point::max();
  in_run_ = true;
  bool terminated = false;
  try {
    for (;;) {
      while (auto m = mailbox_.try_pop()) handle(std::move(*m), strategy);
      if (drain(strategy, elapsed())) {
        terminated = true;
        break;
      }
      if (!slots_.empty() && running_count() == 0) break;  // nothing left to wait for
      auto m = mailbox_.wait_until(deadline);
      if (!m) break;
      handle(std::move(*m), strategy);
      changed();
    }
    const double end = elapsed();
    for (auto& [id, slot] : slots_) {
      if (slot.running < 0) continue;
      slot.worker->kill(slot.running);
      if (!record(slot.running).terminal()) mark_killed(slot.running, end, strategy);
      slot.running = -1;
    }
    in_run_ = false;
    shutdown();
    return result(terminated, end);
  } catch (...) {
    in_run_ = false;
    shutdown();
    throw;
  }
}

void ThreadedController::shutdown() {
  for (auto& [id, slot] : slots_) retired_.push_back(std::move(slot.worker));
  slots_.clear();
  for (auto& w : retired_)
    if (w) w->stop();
  retired_.clear();
}

}  // namespace sot
