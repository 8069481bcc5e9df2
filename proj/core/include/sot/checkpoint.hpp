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

#ifndef SOT_CHECKPOINT_HPP_
#define SOT_CHECKPOINT_HPP_

#include <filesystem>

#include <nlohmann/json.hpp>

#include "sot/controller.hpp"
#include "sot/strategy.hpp"

namespace sot {

inline constexpr int kCheckpointFormatVersion = 1;

/// Writes `{"format_version": 1, ...body}` to a temporary file next to
/// `path` and renames it over `path`, so readers never see a partial file.
void write_snapshot(const std::filesystem::path& path, const nlohmann::json& body);

/// Reads and validates a snapshot. Throws CheckpointError if the file is
/// missing, is not valid JSON, or has another format version.
nlohmann::json read_snapshot(const std::filesystem::path& path);

/// Snapshots a controller and its strategy whenever the controller reports
/// a change (every `every`-th change).
class Checkpointer {
 public:
  Checkpointer(std::filesystem::path path, Controller& controller, const Strategy& strategy,
               int every = 1);
  ~Checkpointer();
  Checkpointer(const Checkpointer&) = delete;
  Checkpointer& operator=(const Checkpointer&) = delete;

  void write_now();
  int snapshots() const { return snapshots_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  Controller& controller_;
  const Strategy& strategy_;
  int every_;
  int changes_ = 0;
  int snapshots_ = 0;
};

/// Restores a controller and strategy built with the same configuration
/// from a snapshot. Controllers that cannot restore in-flight evaluations
/// hand them back to the strategy's queue.
void resume(const std::filesystem::path& path, Controller& controller, Strategy& strategy);

}  // namespace sot

#endif  // SOT_CHECKPOINT_HPP_
