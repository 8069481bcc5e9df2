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

// Strategy doubles for controller tests.

#ifndef SOT_TESTS_SCRIPTED_HPP_
#define SOT_TESTS_SCRIPTED_HPP_

#include <functional>
#include <map>
#include <vector>

#include "sot/strategy.hpp"

namespace sot::testing {

// Delegates propose() to a function and records every callback and event.
class Scripted final : public Strategy {
 public:
  using Script = std::function<std::optional<Proposal>(const ProposeContext&, Scripted&)>;

  explicit Scripted(Script script) : script_(std::move(script)) {}

  std::optional<Proposal> propose(const ProposeContext& ctx) override {
    auto p = script_(ctx, *this);
    if (p) {
      const int index = proposals++;
      p->callbacks.push_back([this, index](bool accepted, RecordId id) {
        answers.push_back({index, accepted, id});
      });
    }
    return p;
  }
  void on_record(const EvalRecord& r) override {
    events.push_back(r);
    ++terminal_count[r.id];
  }
  void on_update(const EvalRecord& r) override { updates.push_back(r); }
  nlohmann::json save_state() const override { return {}; }
  void restore_state(const nlohmann::json&, bool) override {}

  struct Answer {
    int proposal;
    bool accepted;
    RecordId id;
  };
  int proposals = 0;
  std::vector<Answer> answers;
  std::vector<EvalRecord> events;
  std::vector<EvalRecord> updates;
  std::map<RecordId, int> terminal_count;
  int accepted_evals() const {
    int n = 0;
    for (const auto& a : answers) n += a.accepted && a.id >= 0;
    return n;
  }

 private:
  Script script_;
};

// Forwards to another strategy and counts terminal events per record.
class Counting final : public Strategy {
 public:
  explicit Counting(Strategy& inner) : inner_(inner) {}
  std::optional<Proposal> propose(const ProposeContext& ctx) override {
    auto p = inner_.propose(ctx);
    if (p && p->action == ProposalAction::kEval)
      p->callbacks.push_back([this](bool accepted, RecordId) { accepted_ += accepted; });
    return p;
  }
  void on_record(const EvalRecord& r) override {
    ++terminal_count[r.id];
    inner_.on_record(r);
  }
  nlohmann::json save_state() const override { return inner_.save_state(); }
  void restore_state(const nlohmann::json& j, bool requeue) override {
    inner_.restore_state(j, requeue);
  }
  int accepted() const { return accepted_; }
  std::map<RecordId, int> terminal_count;

 private:
  Strategy& inner_;
  int accepted_ = 0;
};

}  // namespace sot::testing

#endif  // SOT_TESTS_SCRIPTED_HPP_
