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

#include "sot/bench/trace_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sot/wire.hpp"

namespace sot::bench {

OutputFormat output_format_from_string(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw ConfigError("unknown format '" + std::string(name) + "'");
}

void write_csv(std::ostream& out, const ExperimentResult& result, bool dump_points) {
  const int d = result.config.dim;
  out << "trial,eval_index,t_start,t_end,worker,f,best_f";
  if (dump_points)
    for (int j = 0; j < d; ++j) out << ",x" << j;
  out << '\n';
  for (const auto& t : result.trials) {
    for (const auto& e : t.trace) {
      out << t.trial << ',' << e.eval_index << ',' << format_double(e.t_start) << ','
          << format_double(e.t_end) << ',' << e.worker << ',' << format_double(e.f) << ','
          << format_double(e.best_f);
      if (dump_points)
        for (Eigen::Index j = 0; j < e.x.size(); ++j) out << ',' << format_double(e.x[j]);
      out << '\n';
    }
  }
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  const auto& s = c.strategy;
  return {{"problem", c.problem},
          {"dim", c.dim},
          {"instance", c.instance},
          {"num_int", c.num_int},
          {"mode", to_string(s.mode)},
          {"workers", s.workers},
          {"alpha", c.alpha},
          {"max_evals", s.max_evals},
          {"time_budget", json_number(c.t_max)},
          {"trials", c.trials},
          {"seed", c.seed},
          {"design", to_string(s.design)},
          {"design_size", s.design_size},
          {"surrogate", to_string(s.surrogate)},
          {"strategy", to_string(s.strategy)},
          {"kernel", to_string(s.kernel)},
          {"tail", to_string(s.tail)},
          {"eta", s.eta},
          {"num_candidates", s.num_candidates},
          {"restarts", s.restarts}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.problem = j.at("problem").get<std::string>();
  c.dim = j.at("dim").get<int>();
  c.instance = j.value("instance", 0);
  c.num_int = j.value("num_int", 0);
  auto& s = c.strategy;
  s.mode = mode_from_string(j.at("mode").get<std::string>());
  s.workers = j.at("workers").get<int>();
  c.alpha = j.at("alpha").get<double>();
  s.max_evals = j.at("max_evals").get<int>();
  c.t_max = j.contains("time_budget") ? number_from_json(j.at("time_budget"))
                                      : std::numeric_limits<double>::infinity();
  c.trials = j.value("trials", 1);
  c.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("design")) s.design = design_kind_from_string(j.at("design").get<std::string>());
  s.design_size = j.value("design_size", 0);
  if (j.contains("surrogate"))
    s.surrogate = surrogate_kind_from_string(j.at("surrogate").get<std::string>());
  if (j.contains("strategy"))
    s.strategy = strategy_kind_from_string(j.at("strategy").get<std::string>());
  if (j.contains("kernel")) s.kernel = kernel_kind_from_string(j.at("kernel").get<std::string>());
  if (j.contains("tail")) s.tail = tail_kind_from_string(j.at("tail").get<std::string>());
  s.eta = j.value("eta", kDefaultRbfEta);
  s.num_candidates = j.value("num_candidates", 0);
  s.restarts = j.value("restarts", true);
  return c;
}

nlohmann::json to_json(const ExperimentResult& result, bool dump_points) {
  nlohmann::json cfg = config_to_json(result.config);
  cfg["f_opt"] = result.f_opt;
  auto trials = nlohmann::json::array();
  for (const auto& t : result.trials) {
    auto trace = nlohmann::json::array();
    for (const auto& e : t.trace) {
      nlohmann::json je = {{"eval_index", e.eval_index}, {"t_start", e.t_start},
                           {"t_end", e.t_end},           {"worker", e.worker},
                           {"f", json_number(e.f)},      {"best_f", json_number(e.best_f)}};
      if (dump_points) je["x"] = vector_to_json(e.x);
      trace.push_back(std::move(je));
    }
    trials.push_back({{"trial", t.trial},
                      {"seed", t.seed},
                      {"f_best", json_number(t.f_best)},
                      {"x_best", vector_to_json(t.x_best)},
                      {"end_time", t.end_time},
                      {"restarts", t.restarts},
                      {"trace", std::move(trace)}});
  }
  return {{"config", std::move(cfg)}, {"trials", std::move(trials)}};
}

ExperimentResult experiment_from_json(const nlohmann::json& j) {
  ExperimentResult r;
  try {
    r.config = config_from_json(j.at("config"));
    r.f_opt = j.at("config").at("f_opt").get<double>();
    for (const auto& jt : j.at("trials")) {
      TrialResult t;
      t.trial = jt.at("trial").get<int>();
      t.seed = jt.at("seed").get<std::uint64_t>();
      t.f_best = number_from_json(jt.at("f_best"));
      t.x_best = vector_from_json(jt.at("x_best"));
      t.end_time = jt.at("end_time").get<double>();
      t.restarts = jt.value("restarts", 0);
      for (const auto& je : jt.at("trace")) t.trace.push_back(trace_entry_from_json(je));
      r.trials.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed experiment file: ") + e.what());
  } catch (const CheckpointError& e) {
    throw ConfigError(std::string("malformed experiment file: ") + e.what());
  }
  return r;
}

nlohmann::json to_json(const SpeedupReport& report) {
  nlohmann::json j;
  j["problem"] = report.problem;
  j["dim"] = report.dim;
  j["intersection"] = {{"lo", json_number(report.lo)},
                       {"hi", json_number(report.hi)},
                       {"empty", report.empty}};
  j["targets"] = report.targets;
  auto configs = nlohmann::json::array();
  for (const auto& c : report.configs) {
    auto rows = nlohmann::json::array();
    for (std::size_t k = 0; k < c.times.size(); ++k) {
      const auto& t = c.times[k];
      const auto& s = c.speedup[k];
      rows.push_back({{"target", t.target},
                      {"mean_time", json_number(t.mean)},
                      {"time_std_error", json_number(t.std_error)},
                      {"reached", t.reached},
                      {"censored", t.censored},
                      {"speedup", json_number(s.speedup)},
                      {"speedup_std_error", json_number(s.std_error)}});
    }
    configs.push_back({{"mode", c.mode},
                       {"workers", c.workers},
                       {"alpha", c.alpha},
                       {"trials", c.trials},
                       {"targets", std::move(rows)}});
  }
  j["configs"] = std::move(configs);
  return j;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  auto out = open_out(path);
  out << doc.dump(1) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_experiment(const std::filesystem::path& path, const ExperimentResult& result,
                      OutputFormat format, bool dump_points) {
  if (format == OutputFormat::kJson) {
    write_json(path, to_json(result, dump_points));
    return;
  }
  auto out = open_out(path);
  write_csv(out, result, dump_points);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

ExperimentResult load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + " is not a JSON experiment file: " + e.what());
  }
  return experiment_from_json(j);
}

}  // namespace sot::bench
