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

#ifndef SOT_TCP_HPP_
#define SOT_TCP_HPP_

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "sot/threaded_controller.hpp"
#include "sot/wire.hpp"
#include "sot/workers.hpp"

namespace sot {

/// Controller-side proxy for a remote worker connected over TCP.
/// A broken connection, BYE, or any malformed frame removes the worker;
/// its in-flight record then fails.
class TcpWorker final : public Worker {
 public:
  TcpWorker(int fd, std::string name, std::unique_ptr<LineReader> reader);
  ~TcpWorker() override;

  std::string name() const override { return name_; }
  void start(int id, Mailbox& mailbox) override;
  void assign(RecordId record, const Vector& x) override;
  void kill(RecordId record) override;
  void stop() override;

 private:
  void read_loop();
  bool send(const Frame& frame);
  void gone(const std::string& reason);

  int fd_;
  std::string name_;
  std::unique_ptr<LineReader> reader_;
  int id_ = -1;
  Mailbox* mailbox_ = nullptr;
  std::mutex write_mu_;
  std::atomic<bool> closed_{false};
  std::atomic<bool> reported_{false};
  std::thread reader_thread_;
};

/// Accepts worker connections and registers every peer that opens with a
/// HELLO frame as a worker of `controller`.
class TcpServer {
 public:
  /// Port 0 binds an ephemeral port; see port().
  explicit TcpServer(ThreadedController& controller, const std::string& host = "127.0.0.1",
                     int port = 0);
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  int port() const { return port_; }
  int accepted() const { return accepted_.load(); }
  void stop();

 private:
  void accept_loop();

  ThreadedController& controller_;
  int listen_fd_ = -1;
  int port_ = 0;
  std::atomic<bool> stop_{false};
  std::atomic<int> accepted_{0};
  std::thread thread_;
};

struct TcpWorkerOptions {
  /// Drop the connection without answering the n-th EVAL (1-based); 0 never.
  int crash_on_eval = 0;
};

/// Worker side of the protocol: connects, sends HELLO, answers EVAL frames
/// until TERMINATE (then says BYE). KILL requests are ignored. Returns the
/// number of evaluations answered. Throws std::runtime_error if the
/// connection cannot be made.
int run_tcp_worker(const std::string& host, int port, const std::string& name,
                   const std::function<double(const Vector&)>& objective,
                   TcpWorkerOptions options = {});

}  // namespace sot

#endif  // SOT_TCP_HPP_
