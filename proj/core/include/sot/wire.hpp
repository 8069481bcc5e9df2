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

#ifndef SOT_WIRE_HPP_
#define SOT_WIRE_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "sot/record.hpp"

namespace sot {

/// Frames of the line-oriented worker protocol. One frame per line, fields
/// separated by single spaces, floats in shortest round-trip form.
///
///   worker -> controller: HELLO name | RESULT id f | UPDATE id f |
///                         FAILED id reason | KILLED id | BYE
///   controller -> worker: EVAL id x1 .. xd | KILL id | TERMINATE
enum class FrameType { kHello, kResult, kUpdate, kFailed, kKilled, kBye, kEval, kKill, kTerminate };

struct Frame {
  FrameType type = FrameType::kBye;
  RecordId id = -1;
  double value = 0.0;
  std::string text;  // worker name or failure reason
  Vector x;
};

std::string format_double(double v);
std::optional<double> parse_double(std::string_view token);

/// Serializes a frame without the trailing newline.
std::string format_frame(const Frame& frame);
/// Parses one line (trailing "\r" tolerated). Throws ProtocolError.
Frame parse_frame(std::string_view line);

/// Upper bound on a frame's length; longer lines are protocol errors.
inline constexpr std::size_t kMaxFrameLength = 1 << 20;

/// Buffered reader of newline-terminated lines from a socket or pipe.
class LineReader {
 public:
  explicit LineReader(int fd) : fd_(fd) {}
  /// Next line without its newline; nullopt on end of stream or error.
  std::optional<std::string> next();

 private:
  int fd_;
  std::string buffer_;
};

/// Writes all of `data`; false on error.
bool write_all(int fd, std::string_view data);

}  // namespace sot

#endif  // SOT_WIRE_HPP_
