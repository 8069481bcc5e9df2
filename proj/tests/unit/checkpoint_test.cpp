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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "sot/checkpoint.hpp"
#include "sot/problem.hpp"
#include "sot/sim_controller.hpp"
#include "sot/surrogate_strategy.hpp"

namespace sot {
namespace {

namespace fs = std::filesystem;

struct Crash : std::runtime_error {
  Crash() : std::runtime_error("simulated crash") {}
};

// Forwards to another strategy and throws once `limit` records have ended.
class CrashAfter final : public Strategy {
 public:
  CrashAfter(Strategy& inner, int limit) : inner_(inner), limit_(limit) {}
  std::optional<Proposal> propose(const ProposeContext& ctx) override { return inner_.propose(ctx); }
  void on_record(const EvalRecord& r) override {
    if (++seen_ > limit_) throw Crash();
    inner_.on_record(r);
  }
  nlohmann::json save_state() const override { return inner_.save_state(); }
  void restore_state(const nlohmann::json& j, bool requeue) override { inner_.restore_state(j, requeue); }

 private:
  Strategy& inner_;
  int limit_;
  int seen_ = 0;
};

class CheckpointTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sot-ckpt-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

StrategyConfig config(int budget) {
  StrategyConfig c;
  c.mode = Mode::kAsync;
  c.workers = 4;
  c.max_evals = budget;
  c.seed = 77;
  return c;
}

TimeModel jitter() {
  return [](Rng& rng) { return 0.5 + std::exponential_distribution<double>(1.0)(rng); };
}

TEST_F(CheckpointTest, CrashAndResumeMatchesAnUninterruptedRun) {
  const Problem p = make_problem("ackley", 4, 1);
  const SimOptions opt{4, INFINITY, 5, true};

  SurrogateStrategy ref_s(p, config(160));
  SimController ref_c(p, jitter(), opt);
  const RunResult ref = ref_c.run(ref_s);

  const fs::path file = dir_ / "run.json";
  {
    SurrogateStrategy s(p, config(160));
    CrashAfter crashing(s, 100);
    SimController c(p, jitter(), opt);
    Checkpointer ck(file, c, crashing);
    EXPECT_THROW(c.run(crashing), Crash);
    EXPECT_GT(ck.snapshots(), 0);
  }
  EXPECT_FALSE(fs::exists(file.string() + ".tmp"));

  SurrogateStrategy s(p, config(160));
  SimController c(p, jitter(), opt);
  resume(file, c, s);
  EXPECT_EQ(c.trace().size(), 100u);
  const RunResult r = c.run(s);
  EXPECT_EQ(r.f_best, ref.f_best);
  ASSERT_EQ(r.trace.size(), ref.trace.size());
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    EXPECT_EQ(r.trace[i].x, ref.trace[i].x);
    EXPECT_EQ(r.trace[i].t_end, ref.trace[i].t_end);
  }
}

TEST_F(CheckpointTest, ImmediateResumeRestoresEveryField) {
  const Problem p = make_problem("levy", 3);
  const fs::path file = dir_ / "snap.json";
  SurrogateStrategy s(p, config(80));
  CrashAfter crashing(s, 37);
  SimController c(p, jitter(), {4, INFINITY, 2, true});
  {
    Checkpointer ck(file, c, crashing, 3);
    EXPECT_THROW(c.run(crashing), Crash);
    ck.write_now();
  }
  const auto doc = read_snapshot(file);
  EXPECT_EQ(doc["format_version"], 1);

  SurrogateStrategy s2(p, config(80));
  SimController c2(p, jitter(), {4, INFINITY, 2, true});
  resume(file, c2, s2);
  EXPECT_EQ(s2.save_state(), doc["strategy"]);
  EXPECT_EQ(c2.save_state(), doc["controller"]);
}

TEST_F(CheckpointTest, VersionMismatchLoadsNothing) {
  const Problem p = make_problem("sphere", 2);
  const fs::path file = dir_ / "v.json";
  SurrogateStrategy s(p, config(30));
  SimController c(p, constant_time(1.0), {4, INFINITY, 0, true});
  c.run(s);
  Checkpointer(file, c, s).write_now();
  auto doc = read_snapshot(file);
  doc["format_version"] = 2;
  std::ofstream(file) << doc.dump();

  SurrogateStrategy fresh(p, config(30));
  SimController fresh_c(p, constant_time(1.0), {4, INFINITY, 0, true});
  const auto before_s = fresh.save_state();
  const auto before_c = fresh_c.save_state();
  EXPECT_THROW(resume(file, fresh_c, fresh), CheckpointError);
  EXPECT_EQ(fresh.save_state(), before_s);
  EXPECT_EQ(fresh_c.save_state(), before_c);
}

TEST_F(CheckpointTest, BrokenSnapshots) {
  EXPECT_THROW(read_snapshot(dir_ / "missing.json"), CheckpointError);
  std::ofstream(dir_ / "corrupt.json") << "{\"format_version\": 1,";
  EXPECT_THROW(read_snapshot(dir_ / "corrupt.json"), CheckpointError);
  std::ofstream(dir_ / "partial.json") << "{\"format_version\": 1, \"strategy\": {}}";
  EXPECT_THROW(read_snapshot(dir_ / "partial.json"), CheckpointError);
  std::ofstream(dir_ / "noversion.json") << "{\"strategy\": {}, \"controller\": {}}";
  EXPECT_THROW(read_snapshot(dir_ / "noversion.json"), CheckpointError);

  const Problem p = make_problem("sphere", 2);
  SurrogateStrategy s(p, config(30));
  SimController c(p, constant_time(1.0), {4, INFINITY, 0, true});
  EXPECT_THROW(Checkpointer(dir_ / "x.json", c, s, 0), ConfigError);
  write_snapshot(dir_ / "wrong.json", {{"strategy", {{"kind", "other"}}}, {"controller", {}}});
  EXPECT_THROW(resume(dir_ / "wrong.json", c, s), CheckpointError);
}

TEST_F(CheckpointTest, SerialResumeRequeuesTheInterruptedEvaluation) {
  const Problem p = make_problem("sphere", 2);
  const fs::path file = dir_ / "serial.json";
  auto cfg = config(30);
  cfg.mode = Mode::kSerial;
  {
    SurrogateStrategy s(p, cfg);
    CrashAfter crashing(s, 12);
    SerialController c(p);
    Checkpointer ck(file, c, crashing);
    EXPECT_THROW(c.run(crashing), Crash);
  }
  SurrogateStrategy s(p, cfg);
  SerialController c(p);
  resume(file, c, s);
  const RunResult r = c.run(s);
  int interrupted = 0;
  for (const auto& rec : r.records)
    if (rec.status == EvalStatus::kKilled) {
      ++interrupted;
      EXPECT_EQ(rec.reason, "interrupted");
    }
  EXPECT_EQ(interrupted, 1);
  EXPECT_EQ(r.trace.size(), 30u);
  EXPECT_TRUE(r.terminated);
}

}  // namespace
}  // namespace sot
