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

#ifndef SOT_BENCH_TRACE_IO_HPP_
#define SOT_BENCH_TRACE_IO_HPP_

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "sot/bench/experiment.hpp"
#include "sot/bench/speedup.hpp"

namespace sot::bench {

enum class OutputFormat { kCsv, kJson };

OutputFormat output_format_from_string(std::string_view name);

/// Header `trial,eval_index,t_start,t_end,worker,f,best_f` (plus x0..x{d-1}
/// with `dump_points`), then one row per completed evaluation.
void write_csv(std::ostream& out, const ExperimentResult& result, bool dump_points);

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// {"config": {..., "f_opt"}, "trials": [{..., "trace": [...]}]}. Points are
/// included only with `dump_points`.
nlohmann::json to_json(const ExperimentResult& result, bool dump_points);
ExperimentResult experiment_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SpeedupReport& report);

/// Writes to `path`; throws std::runtime_error if it cannot be written.
void write_experiment(const std::filesystem::path& path, const ExperimentResult& result,
                      OutputFormat format, bool dump_points);
/// Loads a JSON experiment file.
ExperimentResult load_experiment(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace sot::bench

#endif  // SOT_BENCH_TRACE_IO_HPP_
