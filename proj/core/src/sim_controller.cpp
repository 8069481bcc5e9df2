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

#include "sot/sim_controller.hpp"

#include <algorithm>
#include <cmath>

namespace sot {

TimeModel constant_time(double duration) {
  if (!(duration > 0.0)) throw ConfigError("durations must be positive");
  return [duration](Rng&) { return duration; };
}

SimController::SimController(const Problem& problem, TimeModel time_model, SimOptions options)
    : Controller(problem), time_model_(std::move(time_model)), options_(options) {
  if (!time_model_) throw ConfigError("time model is empty");
  if (options_.workers < 1) throw ConfigError("at least one worker is required");
  if (!(options_.t_max > 0.0)) throw ConfigError("time budget must be positive");
  time_rng_.seed(options_.seed);
  busy_.assign(static_cast<std::size_t>(options_.workers), -1);
}

int SimController::idle_workers() const {
  return static_cast<int>(std::count(busy_.begin(), busy_.end(), RecordId{-1}));
}

void SimController::start(EvalRecord& record) {
  const auto slot = std::find(busy_.begin(), busy_.end(), RecordId{-1});
  record.worker = static_cast<int>(slot - busy_.begin());
  *slot = record.id;

  const double duration = time_model_(time_rng_);
  if (!(duration > 0.0) || !std::isfinite(duration))
    throw ConfigError("time model produced a non-positive duration");
  Event ev;
  ev.id = record.id;
  ev.worker = record.worker;
  try {
    ev.value = problem_.evaluate(record.x);
    if (!std::isfinite(ev.value)) {
      ev.failed = true;
      ev.reason = "nonfinite";
    }
  } catch (const std::exception&) {
    ev.failed = true;
    ev.reason = "exception";
  }
  if (!ev.failed && failure_hook_ && failure_hook_(record)) {
    ev.failed = true;
    ev.reason = "injected";
  }
  events_.emplace(Key{now_ + duration, seq_++}, std::move(ev));
}

bool SimController::deliver_kill(EvalRecord& record) {
  if (!options_.honor_kills) return false;
  for (auto it = events_.begin(); it != events_.end(); ++it) {
    if (it->second.id != record.id) continue;
    busy_[static_cast<std::size_t>(it->second.worker)] = -1;
    events_.erase(it);
    return true;
  }
  return false;
}

RunResult SimController::run(Strategy& strategy) {
  bool terminated = false;
  for (;;) {
    if (drain(strategy, now_)) {
      terminated = true;
      break;
    }
    if (events_.empty()) break;
    auto it = events_.begin();
    if (it->first.first > options_.t_max) break;
    now_ = it->first.first;
    const Event ev = std::move(it->second);
    events_.erase(it);
    busy_[static_cast<std::size_t>(ev.worker)] = -1;
    if (ev.failed)
      fail(ev.id, ev.reason, now_, strategy);
    else
      complete(ev.id, ev.value, now_, strategy);
    changed();
  }
  // Whatever is still running is cut off by the time budget or termination.
  const double end = terminated || events_.empty() ? now_ : options_.t_max;
  while (!events_.empty()) {
    const Event ev = events_.begin()->second;
    events_.erase(events_.begin());
    busy_[static_cast<std::size_t>(ev.worker)] = -1;
    mark_killed(ev.id, end, strategy);
  }
  return result(terminated, end);
}

nlohmann::json SimController::save_state() const {
  nlohmann::json j = Controller::save_state();
  j["kind"] = "sim";
  j["workers"] = options_.workers;
  j["now"] = now_;
  j["seq"] = seq_;
  j["rng"] = rng_state(time_rng_);
  auto events = nlohmann::json::array();
  for (const auto& [key, ev] : events_)
    events.push_back({{"time", key.first},
                      {"seq", key.second},
                      {"id", ev.id},
                      {"worker", ev.worker},
                      {"value", json_number(ev.value)},
                      {"failed", ev.failed},
                      {"reason", ev.reason}});
  j["events"] = std::move(events);
  return j;
}

void SimController::restore_state(const nlohmann::json& j) {
  try {
    if (j.at("kind") != "sim") throw CheckpointError("not a simulated-time controller state");
    if (j.at("workers").get<int>() != options_.workers)
      throw CheckpointError("saved state has a different worker count");
    Controller::restore_state(j);
    now_ = j.at("now").get<double>();
    seq_ = j.at("seq").get<std::int64_t>();
    set_rng_state(time_rng_, j.at("rng").get<std::string>());
    events_.clear();
    busy_.assign(static_cast<std::size_t>(options_.workers), -1);
    for (const auto& e : j.at("events")) {
      Event ev;
      ev.id = e.at("id").get<RecordId>();
      ev.worker = e.at("worker").get<int>();
      ev.value = number_from_json(e.at("value"));
      ev.failed = e.at("failed").get<bool>();
      ev.reason = e.at("reason").get<std::string>();
      if (ev.worker < 0 || ev.worker >= options_.workers)
        throw CheckpointError("event refers to an unknown worker");
      busy_[static_cast<std::size_t>(ev.worker)] = ev.id;
      events_.emplace(Key{e.at("time").get<double>(), e.at("seq").get<std::int64_t>()},
                      std::move(ev));
    }
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("malformed controller state: ") + e.what());
  }
}

}  // namespace sot
