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

#ifndef SOT_STRATEGY_HPP_
#define SOT_STRATEGY_HPP_

#include <optional>

#include <nlohmann/json.hpp>

#include "sot/record.hpp"

namespace sot {

/// What the controller tells the strategy when asking for work.
struct ProposeContext {
  int idle_workers = 0;
  int total_workers = 0;
  double now = 0.0;
};

/// Decision-making half of the controller/strategy split. All calls come
/// from the controller's event loop, one at a time.
class Strategy {
 public:
  virtual ~Strategy() = default;

  /// Next action, or nullopt for "nothing to do right now". The controller
  /// keeps asking until it gets nullopt or a terminate proposal.
  virtual std::optional<Proposal> propose(const ProposeContext& ctx) = 0;

  /// Called once per record when it reaches a terminal status.
  virtual void on_record(const EvalRecord& record) = 0;

  /// Progress updates on a running record. Ignored by default.
  virtual void on_update(const EvalRecord& /*record*/) {}

  virtual nlohmann::json save_state() const = 0;
  /// Restores a saved state. With `requeue_pending`, evaluations that were
  /// in flight when the state was saved go back to the evaluation queue.
  virtual void restore_state(const nlohmann::json& state, bool requeue_pending) = 0;
};

}  // namespace sot

#endif  // SOT_STRATEGY_HPP_
