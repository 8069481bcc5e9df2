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

#include "sot/wire.hpp"

#include <cerrno>
#include <charconv>
#include <vector>

#include <sys/socket.h>
#include <unistd.h>

namespace sot {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view token) {
  if (token.empty()) return std::nullopt;
  if (token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) return std::nullopt;
  return v;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i <= line.size()) {
    const std::size_t j = line.find(' ', i);
    const std::size_t end = j == std::string_view::npos ? line.size() : j;
    if (end > i) out.push_back(line.substr(i, end - i));
    if (j == std::string_view::npos) break;
    i = j + 1;
  }
  return out;
}

RecordId parse_id(std::string_view token) {
  RecordId id = -1;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), id);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size() || id < 0)
    throw ProtocolError("bad record id '" + std::string(token) + "'");
  return id;
}

double parse_value(std::string_view token) {
  const auto v = parse_double(token);
  if (!v) throw ProtocolError("bad number '" + std::string(token) + "'");
  return *v;
}

void expect_fields(const std::vector<std::string_view>& f, std::size_t n) {
  if (f.size() != n)
    throw ProtocolError("frame " + std::string(f[0]) + " expects " + std::to_string(n - 1) +
                        " fields");
}

}  // namespace

std::string format_frame(const Frame& frame) {
  const std::string id = std::to_string(frame.id);
  switch (frame.type) {
    case FrameType::kHello: return "HELLO " + frame.text;
    case FrameType::kResult: return "RESULT " + id + " " + format_double(frame.value);
    case FrameType::kUpdate: return "UPDATE " + id + " " + format_double(frame.value);
    case FrameType::kFailed:
      return "FAILED " + id + " " + (frame.text.empty() ? std::string("error") : frame.text);
    case FrameType::kKilled: return "KILLED " + id;
    case FrameType::kBye: return "BYE";
    case FrameType::kEval: {
      std::string s = "EVAL " + id;
      for (Eigen::Index i = 0; i < frame.x.size(); ++i) s += " " + format_double(frame.x[i]);
      return s;
    }
    case FrameType::kKill: return "KILL " + id;
    case FrameType::kTerminate: return "TERMINATE";
  }
  return {};
}

Frame parse_frame(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = split(line);
  if (f.empty()) throw ProtocolError("empty frame");
  Frame fr;
  const std::string_view tag = f[0];
  if (tag == "HELLO") {
    expect_fields(f, 2);
    fr.type = FrameType::kHello;
    fr.text = std::string(f[1]);
  } else if (tag == "RESULT" || tag == "UPDATE") {
    expect_fields(f, 3);
    fr.type = tag == "RESULT" ? FrameType::kResult : FrameType::kUpdate;
    fr.id = parse_id(f[1]);
    fr.value = parse_value(f[2]);
  } else if (tag == "FAILED") {
    expect_fields(f, 3);
    fr.type = FrameType::kFailed;
    fr.id = parse_id(f[1]);
    fr.text = std::string(f[2]);
  } else if (tag == "KILLED" || tag == "KILL") {
    expect_fields(f, 2);
    fr.type = tag == "KILLED" ? FrameType::kKilled : FrameType::kKill;
    fr.id = parse_id(f[1]);
  } else if (tag == "BYE" || tag == "TERMINATE") {
    expect_fields(f, 1);
    fr.type = tag == "BYE" ? FrameType::kBye : FrameType::kTerminate;
  } else if (tag == "EVAL") {
    if (f.size() < 3) throw ProtocolError("EVAL needs an id and at least one coordinate");
    fr.type = FrameType::kEval;
    fr.id = parse_id(f[1]);
    fr.x.resize(static_cast<Eigen::Index>(f.size() - 2));
    for (std::size_t i = 2; i < f.size(); ++i)
      fr.x[static_cast<Eigen::Index>(i - 2)] = parse_value(f[i]);
  } else {
    throw ProtocolError("unknown frame '" + std::string(tag) + "'");
  }
  return fr;
}

std::optional<std::string> LineReader::next() {
  for (;;) {
    const auto pos = buffer_.find('\n');
    if (pos != std::string::npos) {
      std::string line = buffer_.substr(0, pos);
      buffer_.erase(0, pos + 1);
      return line;
    }
    if (buffer_.size() > kMaxFrameLength) return std::nullopt;
    char chunk[4096];
    const ssize_t n = ::read(fd_, chunk, sizeof chunk);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return std::nullopt;
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

bool write_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n < 0 && errno == ENOTSOCK) {
      const ssize_t w = ::write(fd, data.data(), data.size());
      if (w < 0 && errno == EINTR) continue;
      if (w <= 0) return false;
      data.remove_prefix(static_cast<std::size_t>(w));
      continue;
    }
    if (n <= 0) return false;
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

}  // namespace sot
