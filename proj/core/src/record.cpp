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

#include "sot/record.hpp"

#include <cmath>
#include <limits>

namespace sot {

std::string to_string(EvalStatus status) {
  switch (status) {
    case EvalStatus::kPending: return "pending";
    case EvalStatus::kRunning: return "running";
    case EvalStatus::kCompleted: return "completed";
    case EvalStatus::kKilled: return "killed";
    case EvalStatus::kFailed: return "failed";
  }
  return "unknown";
}

EvalStatus eval_status_from_string(const std::string& name) {
  for (auto s : {EvalStatus::kPending, EvalStatus::kRunning, EvalStatus::kCompleted,
                 EvalStatus::kKilled, EvalStatus::kFailed})
    if (to_string(s) == name) return s;
  throw CheckpointError("unknown record status '" + name + "'");
}

Proposal Proposal::eval(Vector x, std::int64_t epoch) {
  Proposal p;
  p.action = ProposalAction::kEval;
  p.x = std::move(x);
  p.epoch = epoch;
  return p;
}

Proposal Proposal::kill(RecordId id) {
  Proposal p;
  p.action = ProposalAction::kKill;
  p.target = id;
  return p;
}

Proposal Proposal::terminate() { return Proposal{}; }

void Proposal::accept(RecordId record) { fire(true, record); }
void Proposal::reject() { fire(false, target); }

void Proposal::fire(bool accepted, RecordId record) {
  if (fired_) return;
  fired_ = true;
  for (auto& cb : callbacks)
    if (cb) cb(accepted, record);
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw CheckpointError("expected a number");
}

nlohmann::json vector_to_json(const Vector& v) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(json_number(v[i]));
  return out;
}

Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw CheckpointError("expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = number_from_json(j[i]);
  return v;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i).transpose()));
  return out;
}

Matrix matrix_from_json(const nlohmann::json& j, int cols) {
  if (!j.is_array()) throw CheckpointError("expected an array of rows");
  Matrix m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vector row = vector_from_json(j[i]);
    if (row.size() != cols) throw CheckpointError("row has the wrong length");
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

nlohmann::json to_json(const EvalRecord& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["x"] = vector_to_json(r.x);
  j["status"] = to_string(r.status);
  j["value"] = r.value ? json_number(*r.value) : nlohmann::json();
  j["partial_value"] = r.partial_value ? json_number(*r.partial_value) : nlohmann::json();
  j["launch_epoch"] = r.launch_epoch;
  j["t_start"] = r.t_start;
  j["t_end"] = r.t_end;
  j["worker"] = r.worker;
  j["reason"] = r.reason;
  return j;
}

EvalRecord record_from_json(const nlohmann::json& j) {
  EvalRecord r;
  r.id = j.at("id").get<RecordId>();
  r.x = vector_from_json(j.at("x"));
  r.status = eval_status_from_string(j.at("status").get<std::string>());
  if (!j.at("value").is_null()) r.value = number_from_json(j.at("value"));
  if (!j.at("partial_value").is_null()) r.partial_value = number_from_json(j.at("partial_value"));
  r.launch_epoch = j.at("launch_epoch").get<std::int64_t>();
  r.t_start = j.at("t_start").get<double>();
  r.t_end = j.at("t_end").get<double>();
  r.worker = j.at("worker").get<int>();
  r.reason = j.at("reason").get<std::string>();
  return r;
}

nlohmann::json to_json(const TraceEntry& e) {
  return {{"eval_index", e.eval_index}, {"record", e.record},   {"t_start", e.t_start},
          {"t_end", e.t_end},           {"worker", e.worker},   {"x", vector_to_json(e.x)},
          {"f", json_number(e.f)},      {"best_f", json_number(e.best_f)}};
}

TraceEntry trace_entry_from_json(const nlohmann::json& j) {
  TraceEntry e;
  e.eval_index = j.at("eval_index").get<int>();
  e.record = j.value("record", RecordId{-1});
  e.t_start = j.at("t_start").get<double>();
  e.t_end = j.at("t_end").get<double>();
  e.worker = j.at("worker").get<int>();
  if (j.contains("x")) e.x = vector_from_json(j.at("x"));
  e.f = number_from_json(j.at("f"));
  e.best_f = number_from_json(j.at("best_f"));
  return e;
}

}  // namespace sot
