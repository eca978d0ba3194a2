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
// config.hpp: experiment configuration for the dfsbench runner

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace dfsbench {

inline constexpr const char* kReportSchema = "dfsbench.report/1";
inline constexpr const char* kConfigSchema = "dfsbench.config/1";

enum class ExperimentKind {
  kDecompose,
  kFindCode,
  kSymmetrize,
  kCertifyUniversality,
  kSynthesize,
  kSimulate,
  kPulseSim,
  kAncilla,
};

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_kind(std::string_view name);
const std::vector<ExperimentKind>& all_kinds();
/// Whether the experiment draws random numbers (and so requires a seed).
bool uses_randomness(ExperimentKind kind);

/// Schema violations: unknown keys, wrong types, out-of-range values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kDecompose;
  int n_sites = 2;
  int local_dim = 2;
  std::size_t env_dim = 2;
  double coupling_strength = 1.0;
  std::optional<std::uint64_t> seed;
  double tol = 1e-10;
  int trials = 0;  // 0: per-experiment default, resolved at parse time
  std::size_t mc_samples = 0;
  std::size_t time_samples = 100;
  double t_max = 10.0;
  // pulse-sim
  std::vector<std::size_t> cycle_ladder;
  double total_time = 1.0;
  double tau_op = 0.0;
  std::string ordering = "list";
  bool with_noise = true;
  std::string out_dir = "dfsbench-out";

  /// Fully resolved config (all defaults materialized).
  nlohmann::json to_json() const;
};

/// Parses and validates a config document for the given experiment. Unknown
/// keys, wrong types and out-of-range values raise ConfigError. Overrides from
/// the command line are applied before validation.
ExperimentConfig parse_config(ExperimentKind kind, const nlohmann::json& doc,
                              std::optional<std::uint64_t> seed_override = std::nullopt,
                              std::optional<std::string> out_override = std::nullopt,
                              std::optional<double> tol_override = std::nullopt);

/// Human-readable catalog of experiments and their keys; stable across runs.
std::string list_experiments();

}  // namespace dfsbench
