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

#include "sot/bench/speedup.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace sot::bench {

std::vector<double> log_targets(double lo, double hi, int n) {
  if (n < 1) throw ConfigError("at least one target is required");
  if (!(lo > 0.0) || !(hi >= lo)) throw ConfigError("targets need 0 < lo <= hi");
  std::vector<double> out;
  if (n == 1 || lo == hi) return {hi};
  const double a = std::log(hi);
  const double b = std::log(lo);
  for (int k = 0; k < n; ++k) out.push_back(std::exp(a + (b - a) * k / (n - 1)));
  out.back() = lo;
  out.front() = hi;
  return out;
}

std::optional<double> time_to_target(const ProgressTrace& trace, double f_opt,
                                     double target_error) {
  for (const auto& e : trace)
    if (std::max(error_of(e.best_f, f_opt), kErrorFloor) <= target_error) return e.t_end;
  return std::nullopt;
}

namespace {

struct Group {
  std::string mode;
  int workers = 1;
  double alpha = 0.0;
  double f_opt = 0.0;
  std::vector<const TrialResult*> trials;
};

TargetTime target_time(const Group& g, double target) {
  TargetTime tt;
  tt.target = target;
  std::vector<double> times;
  for (const TrialResult* t : g.trials) {
    if (auto v = time_to_target(t->trace, g.f_opt, target))
      times.push_back(*v);
    else
      ++tt.censored;
  }
  tt.reached = static_cast<int>(times.size());
  if (times.empty()) return tt;
  double sum = 0.0;
  for (double v : times) sum += v;
  tt.mean = sum / static_cast<double>(times.size());
  double ss = 0.0;
  for (double v : times) ss += (v - tt.mean) * (v - tt.mean);
  const double n = static_cast<double>(times.size());
  tt.std_error = times.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
  return tt;
}

}  // namespace

SpeedupReport compute_speedup(const std::vector<ExperimentResult>& experiments, int num_targets) {
  if (experiments.empty()) throw ConfigError("no experiments given");
  const auto& first = experiments.front().config;
  std::map<std::tuple<std::string, int, double>, Group> groups;
  for (const auto& ex : experiments) {
    const auto& c = ex.config;
    if (c.problem != first.problem || c.dim != first.dim || c.instance != first.instance)
      throw ConfigError("speedup inputs mix different problems");
    const std::string mode = to_string(c.strategy.mode);
    const int p = simulated_workers(c);
    Group& g = groups[{mode, p, c.alpha}];
    g.mode = mode;
    g.workers = p;
    g.alpha = c.alpha;
    g.f_opt = ex.f_opt;
    for (const auto& t : ex.trials) g.trials.push_back(&t);
  }
  if (groups.size() < 2) throw ConfigError("speedup needs at least two configurations");

  SpeedupReport rep;
  rep.problem = first.problem;
  rep.dim = first.dim;

  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& [key, g] : groups) {
    for (const TrialResult* t : g.trials) {
      if (t->trace.empty()) continue;
      lo = std::max(lo, error_of(t->trace.back().best_f, g.f_opt));
      hi = std::min(hi, error_of(t->trace.front().best_f, g.f_opt));
    }
  }
  lo = std::max(lo, kErrorFloor);
  hi = std::max(hi, kErrorFloor);
  rep.lo = lo;
  rep.hi = hi;
  rep.empty = !(std::isfinite(hi) && lo <= hi);
  if (!rep.empty) rep.targets = log_targets(lo, hi, num_targets);

  std::map<double, const Group*> baseline;
  for (const auto& [key, g] : groups) {
    if (g.workers != 1) continue;
    auto it = baseline.find(g.alpha);
    if (it == baseline.end() || g.mode == "serial") baseline[g.alpha] = &g;
  }

  for (const auto& [key, g] : groups) {
    auto base = baseline.find(g.alpha);
    if (base == baseline.end())
      throw ConfigError("no single-worker run with alpha " + std::to_string(g.alpha));
    ConfigSpeedup cs;
    cs.mode = g.mode;
    cs.workers = g.workers;
    cs.alpha = g.alpha;
    cs.trials = static_cast<int>(g.trials.size());
    for (double target : rep.targets) {
      const TargetTime tp = target_time(g, target);
      const TargetTime t1 = target_time(*base->second, target);
      SpeedupPoint sp;
      sp.target = target;
      if (t1.reached > 0 && tp.reached > 0 && tp.mean > 0.0) {
        sp.speedup = t1.mean / tp.mean;
        const double r1 = t1.std_error / t1.mean;
        const double rp = tp.std_error / tp.mean;
        sp.std_error = sp.speedup * std::sqrt(r1 * r1 + rp * rp);
      }
      cs.times.push_back(tp);
      cs.speedup.push_back(sp);
    }
    rep.configs.push_back(std::move(cs));
  }
  return rep;
}

}  // namespace sot::bench
