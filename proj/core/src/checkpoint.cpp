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

#include "sot/checkpoint.hpp"

#include <fstream>
#include <sstream>

namespace sot {

void write_snapshot(const std::filesystem::path& path, const nlohmann::json& body) {
  nlohmann::json doc = body;
  doc["format_version"] = kCheckpointFormatVersion;
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CheckpointError("cannot write " + tmp.string());
    out << doc.dump();
    out.flush();
    if (!out) throw CheckpointError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CheckpointError("cannot rename snapshot: " + ec.message());
}

nlohmann::json read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot open snapshot " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw CheckpointError("corrupt snapshot " + path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("format_version"))
    throw CheckpointError("snapshot " + path.string() + " has no format_version");
  const auto& v = doc["format_version"];
  if (!v.is_number_integer() || v.get<int>() != kCheckpointFormatVersion)
    throw CheckpointError("snapshot " + path.string() + " has format_version " + v.dump() +
                          ", expected " + std::to_string(kCheckpointFormatVersion));
  if (!doc.contains("controller") || !doc.contains("strategy"))
    throw CheckpointError("snapshot " + path.string() + " is incomplete");
  return doc;
}

Checkpointer::Checkpointer(std::filesystem::path path, Controller& controller,
                           const Strategy& strategy, int every)
    : path_(std::move(path)), controller_(controller), strategy_(strategy), every_(every) {
  if (every_ < 1) throw ConfigError("checkpoint interval must be positive");
  controller_.set_change_hook([this] {
    if (++changes_ % every_ == 0) write_now();
  });
}

Checkpointer::~Checkpointer() { controller_.set_change_hook({}); }

void Checkpointer::write_now() {
  nlohmann::json body;
  body["controller"] = controller_.save_state();
  body["strategy"] = strategy_.save_state();
  write_snapshot(path_, body);
  ++snapshots_;
}

void resume(const std::filesystem::path& path, Controller& controller, Strategy& strategy) {
  const nlohmann::json doc = read_snapshot(path);
  strategy.restore_state(doc["strategy"], !controller.restores_in_flight());
  controller.restore_state(doc["controller"]);
}

}  // namespace sot
