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

#include "sot/surrogate_strategy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace sot {

namespace {

template <typename E, std::size_t N>
E parse_enum(std::string_view name, const std::array<E, N>& values, const char* what) {
  for (E v : values)
    if (to_string(v) == name) return v;
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(name) + "'");
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::kSerial: return "serial";
    case Mode::kSync: return "sync";
    case Mode::kAsync: return "async";
  }
  return "unknown";
}

Mode mode_from_string(std::string_view name) {
  return parse_enum(name, std::array{Mode::kSerial, Mode::kSync, Mode::kAsync}, "mode");
}

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kSrbf: return "srbf";
    case StrategyKind::kDycors: return "dycors";
    case StrategyKind::kUniform: return "uniform";
    case StrategyKind::kEi: return "ei";
    case StrategyKind::kPi: return "pi";
    case StrategyKind::kLcb: return "lcb";
  }
  return "unknown";
}

StrategyKind strategy_kind_from_string(std::string_view name) {
  return parse_enum(name,
                    std::array{StrategyKind::kSrbf, StrategyKind::kDycors, StrategyKind::kUniform,
                               StrategyKind::kEi, StrategyKind::kPi, StrategyKind::kLcb},
                    "strategy");
}

std::string to_string(SurrogateKind kind) { return kind == SurrogateKind::kRbf ? "rbf" : "gp"; }

SurrogateKind surrogate_kind_from_string(std::string_view name) {
  return parse_enum(name, std::array{SurrogateKind::kRbf, SurrogateKind::kGp}, "surrogate");
}

std::string to_string(Phase phase) {
  switch (phase) {
    case Phase::kInitial: return "initial";
    case Phase::kAdaptive: return "adaptive";
    case Phase::kDone: return "done";
  }
  return "unknown";
}

std::unique_ptr<Surrogate> make_surrogate(const StrategyConfig& config, int dim) {
  std::unique_ptr<Surrogate> s;
  if (config.surrogate == SurrogateKind::kRbf)
    s = std::make_unique<RbfSurrogate>(dim, Kernel(config.kernel), config.tail, config.eta);
  else
    s = std::make_unique<GpSurrogate>(dim, config.gp);
  if (config.median_cap) s = std::make_unique<MedianCapSurrogate>(std::move(s));
  return s;
}

int surrogate_min_points(const StrategyConfig& config, int dim) {
  if (config.surrogate == SurrogateKind::kGp) return 2;
  return Tail(config.tail, dim).size();
}

int design_size_for(const StrategyConfig& config, int dim) {
  const int p = config.mode == Mode::kSerial ? 1 : config.workers;
  const int lower = p + surrogate_min_points(config, dim) - 1;
  if (config.design == DesignKind::kFactorial2) {
    if (dim > kMaxFactorialDim) throw ConfigError("2-factorial design refused for d > 20");
    const int n = 1 << dim;
    if (n < lower)
      throw ConfigError("2-factorial design has " + std::to_string(n) + " points but at least " +
                        std::to_string(lower) + " are needed");
    return n;
  }
  const int base = config.design_size > 0 ? config.design_size : 2 * (dim + 1);
  return std::max(base, lower);
}

SurrogateStrategy::SurrogateStrategy(const Problem& problem, StrategyConfig config)
    : problem_(problem), config_(std::move(config)), map_(problem) {
  const int d = problem_.dim();
  if (config_.mode == Mode::kSerial) config_.workers = 1;
  if (config_.workers < 1) throw ConfigError("worker count must be positive");
  if (config_.max_evals < 1) throw ConfigError("evaluation budget must be positive");
  if (config_.max_retries < 0) throw ConfigError("retry count must be >= 0");
  if (!(config_.dist_tol >= 0.0)) throw ConfigError("distance tolerance must be >= 0");
  acquisition_ = config_.strategy == StrategyKind::kEi ||
                 config_.strategy == StrategyKind::kPi || config_.strategy == StrategyKind::kLcb;
  if (acquisition_ && config_.surrogate != SurrogateKind::kGp)
    throw ConfigError(to_string(config_.strategy) + " needs the gp surrogate");
  if (acquisition_) {
    config_.acquisition.kind = config_.strategy == StrategyKind::kEi   ? AcquisitionKind::kEi
                               : config_.strategy == StrategyKind::kPi ? AcquisitionKind::kPi
                                                                       : AcquisitionKind::kLcb;
  }
  params_ = config_.sampling ? *config_.sampling : SamplingParams::defaults(d, config_.workers);
  n0_ = design_size_for(config_, d);
  if (config_.max_evals < n0_)
    throw ConfigError("evaluation budget " + std::to_string(config_.max_evals) +
                      " is below the initial design size " + std::to_string(n0_));
  num_cand_ = config_.num_candidates > 0 ? config_.num_candidates : default_candidate_count(d);
  weights_ = WeightCycle(config_.weights);
  rng_.seed(config_.seed);
  surrogate_ = make_surrogate(config_, d);
  state_ = SamplingState::initial(params_);
  run_x_.resize(0, d);
  best_f_ = std::numeric_limits<double>::infinity();
  queue_design();
}

void SurrogateStrategy::queue_design() {
  const Design design = generate_design(config_.design, n0_, problem_.dim(), rng_);
  const RealizedDesign real = realize(design, problem_, rng_);
  for (const Vector& x : real.points) queue_.push_back({x, 0, true, run_});
}

Phase SurrogateStrategy::phase() const {
  if (terminated_) return Phase::kDone;
  return design_outstanding() > 0 ? Phase::kInitial : Phase::kAdaptive;
}

int SurrogateStrategy::remaining() const { return config_.max_evals - dispatched_; }

int SurrogateStrategy::design_outstanding() const {
  int n = 0;
  for (const auto& item : queue_) n += item.design && item.run == run_;
  for (const auto& [id, inf] : pending_) n += inf.item.design && inf.item.run == run_;
  return n;
}

std::optional<Proposal> SurrogateStrategy::propose(const ProposeContext& ctx) {
  if (terminated_) return std::nullopt;
  const bool exhausted = remaining() <= 0;
  if (exhausted && pending_.empty()) {
    if (terminate_sent_) return std::nullopt;
    terminate_sent_ = true;
    queue_.clear();
    Proposal p = Proposal::terminate();
    p.callbacks.push_back([this](bool accepted, RecordId) {
      if (accepted) terminated_ = true;
    });
    return p;
  }
  if (exhausted || ctx.idle_workers <= 0) return std::nullopt;

  if (queue_.empty()) {
    if (design_outstanding() > 0) return std::nullopt;
    if (config_.mode == Mode::kSync) {
      if (!pending_.empty()) return std::nullopt;
      for (auto& item : generate(std::min(config_.workers, remaining())))
        queue_.push_back(std::move(item));
    } else {
      for (auto& item : generate(1)) queue_.push_back(std::move(item));
    }
    if (queue_.empty()) return std::nullopt;
  }
  Item item = std::move(queue_.front());
  queue_.pop_front();
  return dispatch(std::move(item));
}

Proposal SurrogateStrategy::dispatch(Item item) {
  Proposal p = Proposal::eval(item.x, state_.epoch);
  const std::int64_t epoch = state_.epoch;
  p.callbacks.push_back([this, item = std::move(item), epoch](bool accepted, RecordId id) {
    if (!accepted) {
      ++rejected_;
      return;
    }
    if (pending_.count(id)) throw ProtocolError("record id reused");
    pending_.emplace(id, InFlight{item, epoch});
    ++dispatched_;
  });
  return p;
}

Vector SurrogateStrategy::to_problem(const Vector& u) const {
  Vector x = map_.from_unit(u);
  for (int j = 0; j < problem_.dim(); ++j) {
    if (problem_.is_integer(j)) x[j] = std::round(x[j]);
    x[j] = std::clamp(x[j], problem_.lower()[j], problem_.upper()[j]);
  }
  return x;
}

Matrix SurrogateStrategy::occupied_points() const {
  const Eigen::Index d = problem_.dim();
  Matrix a(run_x_.rows() + static_cast<Eigen::Index>(pending_.size() + queue_.size()), d);
  a.topRows(run_x_.rows()) = run_x_;
  Eigen::Index r = run_x_.rows();
  for (const auto& [id, inf] : pending_) a.row(r++) = map_.to_unit(inf.item.x).transpose();
  for (const auto& item : queue_) a.row(r++) = map_.to_unit(item.x).transpose();
  return a;
}

bool SurrogateStrategy::duplicates_run_point(const Vector& u) const {
  for (Eigen::Index i = 0; i < run_x_.rows(); ++i)
    if ((run_x_.row(i).transpose() - u).norm() <= kDuplicateTolerance) return true;
  return false;
}

void SurrogateStrategy::feed_to(int n) {
  if (fed_ >= n) return;
  try {
    surrogate_->add_points(run_x_.middleRows(fed_, n - fed_), run_f_.segment(fed_, n - fed_));
    fed_ = n;
    return;
  } catch (const NumericalError&) {
  }
  // The incremental update broke down: rebuild from scratch.
  surrogate_->reset();
  fed_ = 0;
  try {
    surrogate_->add_points(run_x_.topRows(n), run_f_.head(n));
    fed_ = n;
  } catch (const NumericalError&) {
    surrogate_->reset();
  }
}

void SurrogateStrategy::feed_surrogate() {
  const int n = static_cast<int>(run_x_.rows());
  if (fed_ >= n) return;
  feed_history_.push_back(n);
  feed_to(n);
}

std::vector<SurrogateStrategy::Item> SurrogateStrategy::generate(int count) {
  std::vector<Item> out;
  if (count <= 0) return out;
  feed_surrogate();
  const Matrix occupied = occupied_points();

  std::vector<int> picks;
  CandidateSet cand;
  if (!surrogate_->ready() || state_.x_best.size() == 0) {
    cand = generate_uniform(problem_, rng_, count);
    for (int i = 0; i < count; ++i) picks.push_back(i);
  } else if (acquisition_) {
    cand = generate_uniform(problem_, rng_, num_cand_);
    const Vector scores =
        acquisition_scores(cand.points, *surrogate_, run_f_.minCoeff(), config_.acquisition);
    picks = select_by_score(cand.points, scores, occupied, count, config_.dist_tol);
  } else {
    switch (config_.strategy) {
      case StrategyKind::kSrbf:
        cand = generate_srbf(state_.x_best, state_.sigma, problem_, rng_, num_cand_);
        break;
      case StrategyKind::kDycors:
        cand = generate_dycors(state_.x_best, state_.sigma, dispatched_, n0_,
                               std::max(config_.max_evals, n0_ + 1), problem_, rng_, num_cand_);
        break;
      default:
        cand = generate_uniform(problem_, rng_, num_cand_);
        break;
    }
    std::vector<double> w;
    for (int i = 0; i < count; ++i) w.push_back(weights_.next());
    picks = select_candidates(cand.points, *surrogate_, occupied, w, config_.dist_tol);
  }
  for (int i : picks)
    out.push_back({to_problem(cand.points.row(i).transpose()), 0, false, run_});
  return out;
}

void SurrogateStrategy::restart() {
  ++run_;
  surrogate_->reset();
  run_x_.resize(0, problem_.dim());
  run_f_.resize(0);
  feed_history_.clear();
  fed_ = 0;
  const std::int64_t epoch = state_.epoch + 1;
  state_ = SamplingState::initial(params_);
  state_.epoch = epoch;
  queue_.clear();
  queue_design();
}

void SurrogateStrategy::on_record(const EvalRecord& record) {
  auto it = pending_.find(record.id);
  if (it == pending_.end())
    throw ProtocolError("event for unknown record " + std::to_string(record.id));
  if (!record.terminal()) throw ProtocolError("record " + std::to_string(record.id) +
                                              " is not in a terminal state");
  const InFlight inf = std::move(it->second);
  pending_.erase(it);

  switch (record.status) {
    case EvalStatus::kCompleted: {
      if (!record.value) throw ProtocolError("completed record without a value");
      const double f = *record.value;
      ++completed_;
      if (f < best_f_) {
        best_f_ = f;
        best_x_ = inf.item.x;
      }
      if (inf.item.run != run_) return;
      const Vector u = map_.to_unit(inf.item.x);
      if (!duplicates_run_point(u)) {
        const Eigen::Index n = run_x_.rows();
        run_x_.conservativeResize(n + 1, Eigen::NoChange);
        run_x_.row(n) = u.transpose();
        run_f_.conservativeResize(n + 1);
        run_f_[n] = f;
      }
      if (inf.item.design) {
        if (f < state_.f_best) {
          state_.f_best = f;
          state_.x_best = u;
        }
        return;
      }
      adjust_radius(state_, params_, f, u, inf.epoch);
      if (config_.restarts && restart_due(state_, params_) && remaining() >= n0_) restart();
      return;
    }
    case EvalStatus::kFailed:
      ++failed_;
      if (inf.item.run == run_ && inf.item.retries < config_.max_retries) {
        Item retry = inf.item;
        ++retry.retries;
        queue_.push_front(std::move(retry));
      }
      return;
    case EvalStatus::kKilled:
      ++killed_;
      return;
    default:
      return;
  }
}

namespace {

nlohmann::json item_json(const Vector& x, int retries, bool design, int run) {
  return {{"x", vector_to_json(x)}, {"retries", retries}, {"design", design}, {"run", run}};
}

}  // namespace

nlohmann::json SurrogateStrategy::save_state() const {
  nlohmann::json j;
  j["kind"] = "surrogate";
  j["dim"] = problem_.dim();
  j["max_evals"] = config_.max_evals;
  j["mode"] = to_string(config_.mode);
  j["workers"] = config_.workers;
  j["design_size"] = n0_;
  j["rng"] = rng_state(rng_);
  j["weight_position"] = weights_.position();
  j["sampling"] = {{"sigma", state_.sigma},
                   {"succ_count", state_.succ_count},
                   {"fail_count", state_.fail_count},
                   {"epoch", state_.epoch},
                   {"f_best", json_number(state_.f_best)},
                   {"x_best", vector_to_json(state_.x_best)},
                   {"stagnant", state_.stagnant}};
  auto queue = nlohmann::json::array();
  for (const auto& item : queue_)
    queue.push_back(item_json(item.x, item.retries, item.design, item.run));
  j["queue"] = std::move(queue);
  auto pending = nlohmann::json::array();
  for (const auto& [id, inf] : pending_) {
    auto e = item_json(inf.item.x, inf.item.retries, inf.item.design, inf.item.run);
    e["id"] = id;
    e["epoch"] = inf.epoch;
    pending.push_back(std::move(e));
  }
  j["pending"] = std::move(pending);
  j["run_x"] = matrix_to_json(run_x_);
  j["run_f"] = vector_to_json(run_f_);
  j["feed_history"] = feed_history_;
  j["run"] = run_;
  j["dispatched"] = dispatched_;
  j["completed"] = completed_;
  j["failed"] = failed_;
  j["killed"] = killed_;
  j["rejected"] = rejected_;
  j["best_f"] = json_number(best_f_);
  j["best_x"] = vector_to_json(best_x_);
  j["terminate_sent"] = terminate_sent_;
  j["terminated"] = terminated_;
  return j;
}

void SurrogateStrategy::restore_state(const nlohmann::json& j, bool requeue_pending) {
  try {
    if (j.at("kind") != "surrogate") throw CheckpointError("not a surrogate strategy state");
    if (j.at("dim").get<int>() != problem_.dim() ||
        j.at("max_evals").get<int>() != config_.max_evals ||
        j.at("mode").get<std::string>() != to_string(config_.mode) ||
        j.at("workers").get<int>() != config_.workers ||
        j.at("design_size").get<int>() != n0_)
      throw CheckpointError("saved strategy state belongs to a different configuration");
    const int d = problem_.dim();

    set_rng_state(rng_, j.at("rng").get<std::string>());
    weights_.set_position(j.at("weight_position").get<int>());
    const auto& s = j.at("sampling");
    state_.sigma = s.at("sigma").get<double>();
    state_.succ_count = s.at("succ_count").get<int>();
    state_.fail_count = s.at("fail_count").get<int>();
    state_.epoch = s.at("epoch").get<std::int64_t>();
    state_.f_best = number_from_json(s.at("f_best"));
    state_.x_best = vector_from_json(s.at("x_best"));
    state_.stagnant = s.at("stagnant").get<int>();

    auto read_item = [](const nlohmann::json& e) {
      return Item{vector_from_json(e.at("x")), e.at("retries").get<int>(),
                  e.at("design").get<bool>(), e.at("run").get<int>()};
    };
    queue_.clear();
    for (const auto& e : j.at("queue")) queue_.push_back(read_item(e));
    pending_.clear();
    for (const auto& e : j.at("pending"))
      pending_.emplace(e.at("id").get<RecordId>(),
                       InFlight{read_item(e), e.at("epoch").get<std::int64_t>()});

    run_x_ = matrix_from_json(j.at("run_x"), d);
    run_f_ = vector_from_json(j.at("run_f"));
    if (run_f_.size() != run_x_.rows()) throw CheckpointError("run points and values differ");
    feed_history_ = j.at("feed_history").get<std::vector<int>>();
    run_ = j.at("run").get<int>();
    dispatched_ = j.at("dispatched").get<int>();
    completed_ = j.at("completed").get<int>();
    failed_ = j.at("failed").get<int>();
    killed_ = j.at("killed").get<int>();
    rejected_ = j.at("rejected").get<int>();
    best_f_ = number_from_json(j.at("best_f"));
    best_x_ = vector_from_json(j.at("best_x"));
    terminate_sent_ = j.at("terminate_sent").get<bool>();
    terminated_ = j.at("terminated").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("malformed strategy state: ") + e.what());
  }

  surrogate_->reset();
  fed_ = 0;
  for (int n : feed_history_) {
    if (n > run_x_.rows()) throw CheckpointError("surrogate history exceeds stored points");
    feed_to(n);
  }

  if (requeue_pending) {
    // Interrupted evaluations of an abandoned run are dropped.
    for (auto it = pending_.rbegin(); it != pending_.rend(); ++it) {
      if (it->second.item.run == run_) queue_.push_front(it->second.item);
      --dispatched_;
    }
    pending_.clear();
  }
}

}  // namespace sot
