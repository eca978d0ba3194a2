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

// dfsbench: command-line runner for the noiseless-code experiments.
//
// Exit status: 0 all checks pass, 1 a check failed, 2 config error, 3 resource cap.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "dfs/errors.hpp"
#include "dfsbench/config.hpp"
#include "dfsbench/experiments.hpp"
#include "json.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitResourceCap = 3;

struct Flags {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out;
  double tol = 0.0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
};

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw dfsbench::ConfigError("cannot open config file " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw dfsbench::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

int execute(dfsbench::ExperimentKind kind, const Flags& flags) {
  dfsbench::ExperimentConfig cfg;
  try {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<double> tol;
    if (flags.seed_opt->count() > 0) seed = flags.seed;
    if (flags.out_opt->count() > 0) out = flags.out;
    if (flags.tol_opt->count() > 0) tol = flags.tol;
    cfg = dfsbench::parse_config(kind, load_config(flags.config_path), seed, out, tol);
  } catch (const dfsbench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  dfsbench::RunReport report;
  try {
    report = dfsbench::run(cfg);
  } catch (const dfsbench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const dfs::DimensionCapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }

  dfsbench::write_outputs(report);
  for (const auto& c : report.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " = " << c.value << " (" << c.comparison << " "
              << c.threshold;
    if (c.comparison == "in") std::cout << ".." << c.upper_bound;
    std::cout << ")\n";
  }
  std::cout << (report.pass() ? "overall: PASS" : "overall: FAIL") << " -> " << cfg.out_dir << "/report.json\n";
  return report.pass() ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dfsbench: noiseless quantum code workbench"};
  app.require_subcommand(1);

  Flags flags;
  std::map<CLI::App*, dfsbench::ExperimentKind> commands;
  for (const auto kind : dfsbench::all_kinds()) {
    const std::string name(dfsbench::to_string(kind));
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", flags.config_path, "JSON config file")->check(CLI::ExistingFile);
    flags.seed_opt = sub->add_option("--seed", flags.seed, "RNG seed (overrides the config)");
    flags.out_opt = sub->add_option("--out", flags.out, "output directory (overrides the config)");
    flags.tol_opt = sub->add_option("--tol", flags.tol, "rank cutoff (overrides the config)");
    commands[sub] = kind;
  }
  CLI::App* list = app.add_subcommand("list", "print the experiment catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  if (list->parsed()) {
    std::cout << dfsbench::list_experiments();
    return kExitPass;
  }
  for (const auto& [sub, kind] : commands) {
    if (sub->parsed()) {
      // Options are per subcommand; rebind to the one that was parsed.
      flags.seed_opt = sub->get_option("--seed");
      flags.out_opt = sub->get_option("--out");
      flags.tol_opt = sub->get_option("--tol");
      return execute(kind, flags);
    }
  }
  return kExitConfigError;
}
