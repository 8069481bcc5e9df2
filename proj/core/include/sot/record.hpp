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

#ifndef SOT_RECORD_HPP_
#define SOT_RECORD_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sot/types.hpp"

namespace sot {

using RecordId = std::int64_t;

enum class EvalStatus { kPending, kRunning, kCompleted, kKilled, kFailed };

std::string to_string(EvalStatus status);
EvalStatus eval_status_from_string(const std::string& name);

/// Lifecycle of one function evaluation. Owned by the controller; the
/// strategy sees read-only snapshots through Strategy::on_record.
struct EvalRecord {
  RecordId id = -1;
  Vector x;
  EvalStatus status = EvalStatus::kPending;
  std::optional<double> value;          // set iff completed
  std::optional<double> partial_value;  // last progress update, if any
  std::int64_t launch_epoch = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  int worker = -1;
  std::string reason;  // failure reason token

  bool terminal() const {
    return status == EvalStatus::kCompleted || status == EvalStatus::kKilled ||
           status == EvalStatus::kFailed;
  }
};

enum class ProposalAction { kEval, kKill, kTerminate };

/// A strategy's request. Every callback is invoked exactly once, when the
/// controller accepts or rejects the proposal; `record` is the id of the
/// record created for an accepted evaluation (or the kill target).
struct Proposal {
  using Callback = std::function<void(bool accepted, RecordId record)>;

  ProposalAction action = ProposalAction::kTerminate;
  Vector x;
  RecordId target = -1;
  std::int64_t epoch = 0;
  std::vector<Callback> callbacks;

  static Proposal eval(Vector x, std::int64_t epoch = 0);
  static Proposal kill(RecordId id);
  static Proposal terminate();

  void accept(RecordId record);
  void reject();

 private:
  void fire(bool accepted, RecordId record);
  bool fired_ = false;
};

/// Per completed evaluation, in completion order.
struct TraceEntry {
  int eval_index = 0;
  RecordId record = -1;
  double t_start = 0.0;
  double t_end = 0.0;
  int worker = -1;
  Vector x;
  double f = 0.0;
  double best_f = 0.0;
};

using ProgressTrace = std::vector<TraceEntry>;

/// Doubles that may be infinite or NaN travel as null.
nlohmann::json json_number(double v);
double number_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, int cols);

nlohmann::json to_json(const EvalRecord& r);
EvalRecord record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TraceEntry& e);
TraceEntry trace_entry_from_json(const nlohmann::json& j);

}  // namespace sot

#endif  // SOT_RECORD_HPP_
