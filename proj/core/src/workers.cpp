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

#include "sot/workers.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <sys/wait.h>

#include "sot/wire.hpp"

namespace sot {

void Mailbox::post(WorkerMessage msg) {
  {
    std::lock_guard lock(mu_);
    queue_.push_back(std::move(msg));
  }
  cv_.notify_one();
}

std::optional<WorkerMessage> Mailbox::try_pop() {
  std::lock_guard lock(mu_);
  if (queue_.empty()) return std::nullopt;
  WorkerMessage m = std::move(queue_.front());
  queue_.pop_front();
  return m;
}

std::optional<WorkerMessage> Mailbox::wait_until(Clock::time_point deadline) {
  std::unique_lock lock(mu_);
  if (!cv_.wait_until(lock, deadline, [&] { return !queue_.empty(); })) return std::nullopt;
  WorkerMessage m = std::move(queue_.front());
  queue_.pop_front();
  return m;
}

ThreadWorker::ThreadWorker(std::string name, Objective objective, bool honor_kills)
    : name_(std::move(name)), objective_(std::move(objective)), honor_kills_(honor_kills) {
  if (!objective_) throw ConfigError("worker objective is empty");
}

ThreadWorker::~ThreadWorker() { stop(); }

void ThreadWorker::start(int id, Mailbox& mailbox) {
  std::lock_guard lock(mu_);
  if (thread_.joinable()) throw ConfigError("worker already started");
  id_ = id;
  mailbox_ = &mailbox;
  thread_ = std::thread([this] { loop(); });
}

void ThreadWorker::assign(RecordId record, const Vector& x) {
  {
    std::lock_guard lock(mu_);
    job_.emplace(record, x);
  }
  cv_.notify_one();
}

void ThreadWorker::kill(RecordId record) {
  std::lock_guard lock(mu_);
  if (current_ == record) cancel_ = true;
  if (honor_kills_ && job_ && job_->first == record) {
    job_.reset();
    WorkerMessage m;
    m.kind = WorkerMessage::Kind::kKilled;
    m.worker = id_;
    m.id = record;
    mailbox_->post(std::move(m));
  }
}

void ThreadWorker::stop() {
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  cv_.notify_one();
  if (thread_.joinable()) thread_.join();
}

void ThreadWorker::loop() {
  for (;;) {
    std::pair<RecordId, Vector> job;
    {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [&] { return stop_ || job_.has_value(); });
      if (stop_) return;
      job = std::move(*job_);
      job_.reset();
      current_ = job.first;
      cancel_ = false;
    }
    WorkerMessage m;
    m.worker = id_;
    m.id = job.first;
    try {
      m.value = objective_(job.second);
      m.kind = std::isfinite(m.value) ? WorkerMessage::Kind::kResult
                                      : WorkerMessage::Kind::kFailed;
      if (m.kind == WorkerMessage::Kind::kFailed) m.reason = "nonfinite";
    } catch (const std::exception&) {
      m.kind = WorkerMessage::Kind::kFailed;
      m.reason = "exception";
    }
    {
      std::lock_guard lock(mu_);
      if (cancel_ && honor_kills_) m.kind = WorkerMessage::Kind::kKilled;
      current_ = -1;
    }
    mailbox_->post(std::move(m));
  }
}

std::optional<double> last_float(std::string_view text) {
  std::optional<double> last;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) {
      if (auto v = parse_double(text.substr(i, j - i))) last = v;
    }
    i = j;
  }
  return last;
}

double run_subprocess_objective(const std::string& command_template, const Vector& x) {
  std::string coords;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) coords += ' ';
    coords += format_double(x[i]);
  }
  std::string cmd = command_template;
  for (std::size_t pos = cmd.find("{x}"); pos != std::string::npos;
       pos = cmd.find("{x}", pos + coords.size()))
    cmd.replace(pos, 3, coords);

  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot start '" + cmd + "'");
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw std::runtime_error("command failed: " + cmd);
  const auto v = last_float(out);
  if (!v) throw std::runtime_error("command printed no number: " + cmd);
  return *v;
}

std::shared_ptr<Worker> make_subprocess_worker(std::string name, std::string command_template,
                                               bool honor_kills) {
  if (command_template.find("{x}") == std::string::npos)
    throw ConfigError("command template needs an {x} placeholder");
  return std::make_shared<ThreadWorker>(
      std::move(name),
      [tmpl = std::move(command_template)](const Vector& x) {
        return run_subprocess_objective(tmpl, x);
      },
      honor_kills);
}

}  // namespace sot
