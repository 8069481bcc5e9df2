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

#include "sot/controller.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace sot {

Controller::Controller(const Problem& problem)
    : problem_(problem), best_f_(std::numeric_limits<double>::infinity()) {}

const EvalRecord& Controller::record(RecordId id) const {
  if (id < 0 || id >= static_cast<RecordId>(records_.size()))
    throw ProtocolError("unknown record " + std::to_string(id));
  return records_[static_cast<std::size_t>(id)];
}

EvalRecord& Controller::mutable_record(RecordId id) {
  return const_cast<EvalRecord&>(record(id));
}

void Controller::changed() {
  if (hook_) hook_();
}

bool Controller::drain(Strategy& strategy, double now) {
  bool any = false;
  for (;;) {
    std::optional<Proposal> p =
        strategy.propose(ProposeContext{idle_workers(), total_workers(), now});
    if (!p) break;
    any = true;
    switch (p->action) {
      case ProposalAction::kTerminate:
        p->accept(-1);
        changed();
        return true;
      case ProposalAction::kKill: {
        EvalRecord& rec = mutable_record(p->target);
        const RecordId id = rec.id;
        const bool stopped = !rec.terminal() && deliver_kill(rec);
        p->accept(id);
        if (stopped) mark_killed(id, now, strategy);
        break;
      }
      case ProposalAction::kEval: {
        if (idle_workers() <= 0 || !problem_.contains(p->x)) {
          p->reject();
          break;
        }
        EvalRecord rec;
        rec.id = static_cast<RecordId>(records_.size());
        rec.x = p->x;
        rec.launch_epoch = p->epoch;
        rec.t_start = now;
        records_.push_back(std::move(rec));
        p->accept(records_.back().id);
        EvalRecord& stored = records_.back();
        stored.status = EvalStatus::kRunning;
        start(stored);
        break;
      }
    }
  }
  if (any) changed();
  return false;
}

void Controller::finish(EvalRecord& rec, EvalStatus status, double t, Strategy& strategy) {
  if (rec.terminal()) throw ProtocolError("record " + std::to_string(rec.id) + " already final");
  rec.status = status;
  rec.t_end = std::max(t, rec.t_start);
  strategy.on_record(rec);
}

void Controller::complete(RecordId id, double value, double t, Strategy& strategy) {
  EvalRecord& rec = mutable_record(id);
  if (!std::isfinite(value)) {
    fail(id, "nonfinite", t, strategy);
    return;
  }
  rec.value = value;
  if (value < best_f_) {
    best_f_ = value;
    best_x_ = rec.x;
  }
  TraceEntry e;
  e.eval_index = static_cast<int>(trace_.size());
  e.record = id;
  e.t_start = rec.t_start;
  e.t_end = std::max(t, rec.t_start);
  e.worker = rec.worker;
  e.x = rec.x;
  e.f = value;
  e.best_f = best_f_;
  trace_.push_back(std::move(e));
  finish(rec, EvalStatus::kCompleted, t, strategy);
}

void Controller::fail(RecordId id, const std::string& reason, double t, Strategy& strategy) {
  EvalRecord& rec = mutable_record(id);
  rec.reason = reason.empty() ? "failed" : reason;
  finish(rec, EvalStatus::kFailed, t, strategy);
}

void Controller::mark_killed(RecordId id, double t, Strategy& strategy) {
  finish(mutable_record(id), EvalStatus::kKilled, t, strategy);
}

void Controller::update(RecordId id, double value, Strategy& strategy) {
  EvalRecord& rec = mutable_record(id);
  if (rec.terminal()) return;
  rec.partial_value = value;
  strategy.on_update(rec);
}

RunResult Controller::result(bool terminated, double end_time) const {
  RunResult r;
  r.x_best = best_x_;
  r.f_best = best_f_;
  r.trace = trace_;
  r.records = records_;
  r.terminated = terminated;
  r.end_time = end_time;
  return r;
}

nlohmann::json Controller::save_state() const {
  nlohmann::json j;
  auto recs = nlohmann::json::array();
  for (const auto& r : records_) recs.push_back(to_json(r));
  auto trace = nlohmann::json::array();
  for (const auto& e : trace_) trace.push_back(to_json(e));
  j["records"] = std::move(recs);
  j["trace"] = std::move(trace);
  j["best_f"] = json_number(best_f_);
  j["best_x"] = vector_to_json(best_x_);
  return j;
}

void Controller::restore_state(const nlohmann::json& j) {
  try {
    records_.clear();
    for (const auto& r : j.at("records")) records_.push_back(record_from_json(r));
    for (std::size_t i = 0; i < records_.size(); ++i)
      if (records_[i].id != static_cast<RecordId>(i))
        throw CheckpointError("record ids are not consecutive");
    trace_.clear();
    for (const auto& e : j.at("trace")) trace_.push_back(trace_entry_from_json(e));
    best_f_ = number_from_json(j.at("best_f"));
    best_x_ = vector_from_json(j.at("best_x"));
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("malformed controller state: ") + e.what());
  }
  if (!restores_in_flight()) {
    for (auto& r : records_) {
      if (!r.terminal()) {
        r.status = EvalStatus::kKilled;
        r.reason = "interrupted";
      }
    }
  }
}

RunResult SerialController::run(Strategy& strategy) {
  const auto t0 = std::chrono::steady_clock::now();
  auto clock = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  bool terminated = false;
  for (;;) {
    now_ = clock();
    if (drain(strategy, now_)) {
      terminated = true;
      break;
    }
    if (running_ < 0) break;  // the strategy is waiting on nothing
    const RecordId id = running_;
    const Vector x = record(id).x;
    double value = 0.0;
    std::string error;
    try {
      value = problem_.evaluate(x);
    } catch (const std::exception& e) {
      error = e.what();
    }
    running_ = -1;
    if (error.empty())
      complete(id, value, clock(), strategy);
    else
      fail(id, "exception", clock(), strategy);
    changed();
  }
  return result(terminated, clock());
}

void SerialController::start(EvalRecord& record) {
  record.worker = 0;
  running_ = record.id;
}

}  // namespace sot
