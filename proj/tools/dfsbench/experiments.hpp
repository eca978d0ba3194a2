// Copyright 2026 The dfsbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// experiments.hpp: the eight pipelines behind the dfsbench subcommands

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dfsbench/config.hpp"
#include "json.hpp"

namespace dfsbench {

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  /// "<=", ">=", "==" or "in" (threshold holds the lower bound, upper_bound the upper).
  std::string comparison;
  double upper_bound = 0.0;
  bool pass = false;
};

/// A data file produced by a run, held in memory until the run has finished.
struct Artifact {
  std::string file;
  std::string contents;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<Check> checks;
  nlohmann::json results = nlohmann::json::object();
  std::vector<Artifact> artifacts;

  bool pass() const;
  nlohmann::json to_json() const;
};

/// Executes the configured pipeline. Nothing touches the filesystem here.
/// Throws ConfigError for settings that only become invalid once derived
/// quantities are known, and dfs::DimensionCapExceeded on resource caps.
RunReport run(const ExperimentConfig& config);

/// Creates the output directory, writes every artifact, then report.json.
void write_outputs(const RunReport& report);

}  // namespace dfsbench
