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

// sot-bench: simulated-time experiments and speedup analysis.
//
//   sot-bench run --problem rastrigin --dim 10 --mode async --workers 16
//       --alpha 2.84 --max-evals 400 --time-budget 50 --trials 30
//       --out async16.json --format json
//   sot-bench speedup --in serial.json,async4.json,async16.json --targets 10
//       --out speedup.json
//   sot-bench serve --problem sphere --dim 2 --max-evals 50 --port 5555
//   sot-bench worker --problem sphere --dim 2 --port 5555
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "sot/bench/experiment.hpp"
#include "sot/bench/pareto.hpp"
#include "sot/bench/speedup.hpp"
#include "sot/bench/trace_io.hpp"
#include "sot/tcp.hpp"
#include "sot/threaded_controller.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct RunArgs {
  std::string problem = "ackley";
  int dim = 10;
  int instance = 1;
  int num_int = 0;
  std::string mode = "async";
  int workers = 1;
  double alpha = 2.84;
  int max_evals = 400;
  double time_budget = std::numeric_limits<double>::infinity();
  int trials = 1;
  std::uint64_t seed = 0;
  std::string design = "slhd";
  int design_size = 0;
  std::string surrogate = "rbf";
  std::string strategy = "dycors";
  std::string kernel = "cubic";
  std::string tail = "linear";
  double eta = sot::kDefaultRbfEta;
  int num_cand = 0;
  bool no_restarts = false;
  std::string out = "-";
  std::string format = "csv";
  bool dump_points = false;
};

void add_run_options(CLI::App& cmd, RunArgs& a) {
  cmd.add_option("--problem", a.problem, "catalog problem name")->capture_default_str();
  cmd.add_option("--dim", a.dim, "dimension")->capture_default_str();
  cmd.add_option("--instance", a.instance, "instance (0 = unshifted)")->capture_default_str();
  cmd.add_option("--int-vars", a.num_int, "leading integer coordinates")->capture_default_str();
  cmd.add_option("--mode", a.mode, "serial|sync|async")->capture_default_str();
  cmd.add_option("--workers", a.workers, "parallel workers p")->capture_default_str();
  cmd.add_option("--max-evals", a.max_evals, "evaluation budget")->capture_default_str();
  cmd.add_option("--seed", a.seed, "base seed")->capture_default_str();
  cmd.add_option("--design", a.design, "slhd|lhd|factorial2")->capture_default_str();
  cmd.add_option("--design-size", a.design_size, "initial design size (0 = 2(d+1))");
  cmd.add_option("--surrogate", a.surrogate, "rbf|gp")->capture_default_str();
  cmd.add_option("--strategy", a.strategy, "srbf|dycors|uniform|ei|pi|lcb")
      ->capture_default_str();
  cmd.add_option("--kernel", a.kernel, "cubic|tps|linear")->capture_default_str();
  cmd.add_option("--tail", a.tail, "linear|constant")->capture_default_str();
  cmd.add_option("--eta", a.eta, "RBF regularization")->capture_default_str();
  cmd.add_option("--num-cand", a.num_cand, "candidates per proposal (0 = 100 d)");
  cmd.add_flag("--no-restarts", a.no_restarts, "disable restarts");
}

sot::bench::ExperimentConfig make_config(const RunArgs& a) {
  sot::bench::ExperimentConfig c;
  c.problem = a.problem;
  c.dim = a.dim;
  c.instance = a.instance;
  c.num_int = a.num_int;
  c.alpha = a.alpha;
  c.t_max = a.time_budget;
  c.trials = a.trials;
  c.seed = a.seed;
  auto& s = c.strategy;
  s.mode = sot::mode_from_string(a.mode);
  s.workers = a.workers;
  s.max_evals = a.max_evals;
  s.design = sot::design_kind_from_string(a.design);
  s.design_size = a.design_size;
  s.surrogate = sot::surrogate_kind_from_string(a.surrogate);
  s.strategy = sot::strategy_kind_from_string(a.strategy);
  s.kernel = sot::kernel_kind_from_string(a.kernel);
  s.tail = sot::tail_kind_from_string(a.tail);
  s.eta = a.eta;
  s.num_candidates = a.num_cand;
  s.restarts = !a.no_restarts;
  return c;
}

void emit(const std::string& out, const nlohmann::json& doc) {
  if (out == "-")
    std::cout << doc.dump(1) << '\n';
  else
    sot::bench::write_json(out, doc);
}

int cmd_run(const RunArgs& a) {
  const auto config = make_config(a);
  const auto format = sot::bench::output_format_from_string(a.format);
  // Surface configuration problems before any trial runs.
  const sot::Problem problem = sot::bench::make_experiment_problem(config);
  sot::SurrogateStrategy probe(problem, config.strategy);
  sot::bench::ParetoTimeModel check(config.alpha);
  if (config.trials < 1) throw sot::ConfigError("--trials must be positive");

  const auto result = sot::bench::run_experiment(config);
  if (a.out == "-") {
    if (format == sot::bench::OutputFormat::kCsv)
      sot::bench::write_csv(std::cout, result, a.dump_points);
    else
      std::cout << sot::bench::to_json(result, a.dump_points).dump(1) << '\n';
  } else {
    sot::bench::write_experiment(a.out, result, format, a.dump_points);
  }
  return 0;
}

int cmd_speedup(const std::vector<std::string>& inputs, int targets, const std::string& out) {
  std::vector<sot::bench::ExperimentResult> experiments;
  for (const auto& path : inputs) experiments.push_back(sot::bench::load_experiment(path));
  const auto report = sot::bench::compute_speedup(experiments, targets);
  emit(out, sot::bench::to_json(report));
  return 0;
}

int cmd_serve(const RunArgs& a, const std::string& host, int port, double time_limit) {
  auto config = make_config(a);
  const sot::Problem problem = sot::bench::make_experiment_problem(config);
  config.strategy.seed = a.seed;
  sot::SurrogateStrategy strategy(problem, config.strategy);
  sot::ThreadedController controller(problem, sot::ThreadedOptions{time_limit});
  sot::TcpServer server(controller, host, port);
  std::cerr << "listening on " << host << ":" << server.port() << '\n';
  const auto r = controller.run(strategy);
  server.stop();
  nlohmann::json doc = {{"f_best", sot::json_number(r.f_best)},
                        {"x_best", sot::vector_to_json(r.x_best)},
                        {"evaluations", r.trace.size()},
                        {"terminated", r.terminated}};
  emit(a.out, doc);
  return 0;
}

int cmd_worker(const RunArgs& a, const std::string& host, int port, const std::string& name) {
  auto config = make_config(a);
  const sot::Problem problem = sot::bench::make_experiment_problem(config);
  const int n = sot::run_tcp_worker(host, port, name,
                                    [&](const sot::Vector& x) { return problem.evaluate(x); });
  std::cerr << name << ": " << n << " evaluations\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surrogate optimization benchmark harness"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "run simulated-time trials");
  add_run_options(*run, run_args);
  run->add_option("--alpha", run_args.alpha, "Pareto shape of evaluation times")
      ->capture_default_str();
  run->add_option("--time-budget", run_args.time_budget, "simulated time budget");
  run->add_option("--trials", run_args.trials, "number of trials")->capture_default_str();
  run->add_option("--out", run_args.out, "output path ('-' for stdout)")->capture_default_str();
  run->add_option("--format", run_args.format, "csv|json")->capture_default_str();
  run->add_flag("--dump-points", run_args.dump_points, "include evaluated points");

  std::vector<std::string> inputs;
  int targets = 10;
  std::string speedup_out = "-";
  auto* speedup = app.add_subcommand("speedup", "relative speedup from JSON traces");
  speedup->add_option("--in", inputs, "JSON files from 'run --format json'")
      ->required()
      ->delimiter(',');
  speedup->add_option("--targets", targets, "number of targets")->capture_default_str();
  speedup->add_option("--out", speedup_out, "output path ('-' for stdout)");

  RunArgs serve_args;
  std::string host = "127.0.0.1";
  int port = 0;
  double time_limit = std::numeric_limits<double>::infinity();
  auto* serve = app.add_subcommand("serve", "optimize with TCP workers");
  add_run_options(*serve, serve_args);
  serve->add_option("--host", host, "IPv4 address to bind")->capture_default_str();
  serve->add_option("--port", port, "port (0 = any)")->capture_default_str();
  serve->add_option("--time-limit", time_limit, "wall-clock limit in seconds");
  serve->add_option("--out", serve_args.out, "result path ('-' for stdout)");

  RunArgs worker_args;
  std::string worker_host = "127.0.0.1";
  int worker_port = 0;
  std::string worker_name = "worker";
  auto* worker = app.add_subcommand("worker", "evaluate a catalog problem for 'serve'");
  worker->add_option("--problem", worker_args.problem, "catalog problem name");
  worker->add_option("--dim", worker_args.dim, "dimension");
  worker->add_option("--instance", worker_args.instance, "instance");
  worker->add_option("--int-vars", worker_args.num_int, "leading integer coordinates");
  worker->add_option("--host", worker_host, "controller address");
  worker->add_option("--port", worker_port, "controller port")->required();
  worker->add_option("--name", worker_name, "worker name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*speedup) return cmd_speedup(inputs, targets, speedup_out);
    if (*serve) return cmd_serve(serve_args, host, port, time_limit);
    if (*worker) return cmd_worker(worker_args, worker_host, worker_port, worker_name);
  } catch (const sot::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const sot::NotFoundError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
