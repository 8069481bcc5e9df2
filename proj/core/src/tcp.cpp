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

#include "sot/tcp.hpp"

#include <cerrno>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

namespace sot {

namespace {

void set_nodelay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

void set_recv_timeout(int fd, double seconds) {
  timeval tv{};
  tv.tv_sec = static_cast<time_t>(seconds);
  tv.tv_usec = static_cast<suseconds_t>((seconds - std::floor(seconds)) * 1e6);
  ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
}

}  // namespace

TcpWorker::TcpWorker(int fd, std::string name, std::unique_ptr<LineReader> reader)
    : fd_(fd), name_(std::move(name)), reader_(std::move(reader)) {}

TcpWorker::~TcpWorker() { stop(); }

void TcpWorker::start(int id, Mailbox& mailbox) {
  id_ = id;
  mailbox_ = &mailbox;
  reader_thread_ = std::thread([this] { read_loop(); });
}

bool TcpWorker::send(const Frame& frame) {
  std::lock_guard lock(write_mu_);
  if (closed_) return false;
  return write_all(fd_, format_frame(frame) + "\n");
}

void TcpWorker::gone(const std::string& reason) {
  if (reported_.exchange(true)) return;
  WorkerMessage m;
  m.kind = WorkerMessage::Kind::kGone;
  m.worker = id_;
  m.reason = reason;
  mailbox_->post(std::move(m));
}

void TcpWorker::assign(RecordId record, const Vector& x) {
  Frame f;
  f.type = FrameType::kEval;
  f.id = record;
  f.x = x;
  if (!send(f)) {
    ::shutdown(fd_, SHUT_RDWR);
    gone("connection-lost");
  }
}

void TcpWorker::kill(RecordId record) {
  Frame f;
  f.type = FrameType::kKill;
  f.id = record;
  send(f);
}

void TcpWorker::read_loop() {
  for (;;) {
    const auto line = reader_->next();
    if (!line) {
      gone("connection-lost");
      return;
    }
    Frame f;
    try {
      f = parse_frame(*line);
    } catch (const ProtocolError&) {
      ::shutdown(fd_, SHUT_RDWR);
      gone("protocol-error");
      return;
    }
    WorkerMessage m;
    m.worker = id_;
    m.id = f.id;
    m.value = f.value;
    switch (f.type) {
      case FrameType::kResult: m.kind = WorkerMessage::Kind::kResult; break;
      case FrameType::kUpdate: m.kind = WorkerMessage::Kind::kUpdate; break;
      case FrameType::kFailed:
        m.kind = WorkerMessage::Kind::kFailed;
        m.reason = f.text;
        break;
      case FrameType::kKilled: m.kind = WorkerMessage::Kind::kKilled; break;
      case FrameType::kBye:
        gone("bye");
        return;
      default:  // controller-bound frames only
        ::shutdown(fd_, SHUT_RDWR);
        gone("protocol-error");
        return;
    }
    mailbox_->post(std::move(m));
  }
}

void TcpWorker::stop() {
  if (!closed_) {
    Frame f;
    f.type = FrameType::kTerminate;
    send(f);
    {
      std::lock_guard lock(write_mu_);
      closed_ = true;
    }
    ::shutdown(fd_, SHUT_RDWR);
  }
  if (reader_thread_.joinable()) reader_thread_.join();
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

TcpServer::TcpServer(ThreadedController& controller, const std::string& host, int port)
    : controller_(controller) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw std::runtime_error("socket: " + std::string(std::strerror(errno)));
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw ConfigError("bad IPv4 address '" + host + "'");
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
      ::listen(listen_fd_, 64) != 0) {
    const std::string err = std::strerror(errno);
    ::close(listen_fd_);
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port) + ": " + err);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  thread_ = std::thread([this] { accept_loop(); });
}

TcpServer::~TcpServer() { stop(); }

void TcpServer::stop() {
  stop_ = true;
  if (thread_.joinable()) thread_.join();
  if (listen_fd_ >= 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
}

void TcpServer::accept_loop() {
  while (!stop_) {
    pollfd pfd{listen_fd_, POLLIN, 0};
    const int r = ::poll(&pfd, 1, 50);
    if (r <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    set_nodelay(fd);
    set_recv_timeout(fd, 5.0);
    auto reader = std::make_unique<LineReader>(fd);
    const auto line = reader->next();
    std::string name;
    bool ok = false;
    if (line) {
      try {
        const Frame f = parse_frame(*line);
        ok = f.type == FrameType::kHello;
        name = f.text;
      } catch (const ProtocolError&) {
      }
    }
    if (!ok) {
      ::close(fd);
      continue;
    }
    set_recv_timeout(fd, 0.0);
    ++accepted_;
    controller_.add_worker(std::make_shared<TcpWorker>(fd, name, std::move(reader)));
  }
}

int run_tcp_worker(const std::string& host, int port, const std::string& name,
                   const std::function<double(const Vector&)>& objective,
                   TcpWorkerOptions options) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0 || !res)
    throw std::runtime_error("cannot resolve " + host);
  const int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  if (fd < 0 || ::connect(fd, res->ai_addr, res->ai_addrlen) != 0) {
    ::freeaddrinfo(res);
    if (fd >= 0) ::close(fd);
    throw std::runtime_error("cannot connect to " + host + ":" + std::to_string(port));
  }
  ::freeaddrinfo(res);
  set_nodelay(fd);

  auto say = [fd](const Frame& f) { return write_all(fd, format_frame(f) + "\n"); };
  Frame hello;
  hello.type = FrameType::kHello;
  hello.text = name;
  int answered = 0;
  int evals = 0;
  if (!say(hello)) {
    ::close(fd);
    return 0;
  }
  LineReader reader(fd);
  while (auto line = reader.next()) {
    Frame f;
    try {
      f = parse_frame(*line);
    } catch (const ProtocolError&) {
      break;
    }
    if (f.type == FrameType::kTerminate) {
      Frame bye;
      bye.type = FrameType::kBye;
      say(bye);
      break;
    }
    if (f.type != FrameType::kEval) continue;  // KILL: ignored
    if (options.crash_on_eval > 0 && ++evals == options.crash_on_eval) {
      ::shutdown(fd, SHUT_RDWR);
      break;
    }
    Frame reply;
    reply.id = f.id;
    try {
      reply.value = objective(f.x);
      reply.type = std::isfinite(reply.value) ? FrameType::kResult : FrameType::kFailed;
      if (reply.type == FrameType::kFailed) reply.text = "nonfinite";
    } catch (const std::exception&) {
      reply.type = FrameType::kFailed;
      reply.text = "exception";
    }
    if (!say(reply)) break;
    ++answered;
  }
  ::close(fd);
  return answered;
}

}  // namespace sot
