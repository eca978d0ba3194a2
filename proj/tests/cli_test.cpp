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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dfs/errors.hpp"
#include "dfsbench/config.hpp"
#include "dfsbench/experiments.hpp"

namespace dfsbench {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

TEST(Catalog, ListsEveryExperimentDeterministically) {
  const std::string catalog = list_experiments();
  for (const char* name : {"decompose", "find-code", "symmetrize", "certify-universality", "synthesize", "simulate",
                           "pulse-sim", "ancilla"}) {
    EXPECT_NE(catalog.find(name), std::string::npos) << name;
  }
  EXPECT_NE(catalog.find("required:"), std::string::npos);
  EXPECT_EQ(catalog, list_experiments());
  EXPECT_EQ(all_kinds().size(), 8u);
  for (const auto kind : all_kinds()) EXPECT_EQ(parse_kind(to_string(kind)), kind);
  EXPECT_FALSE(parse_kind("nope").has_value());
}

TEST(ParseConfig, RejectsSchemaViolations) {
  const auto k = ExperimentKind::kFindCode;
  EXPECT_THROW(parse_config(k, json{{"n_sitez", 4}}), ConfigError);
  EXPECT_THROW(parse_config(k, json{{"n_sites", "four"}}), ConfigError);
  EXPECT_THROW(parse_config(k, json{{"n_sites", 2.5}}), ConfigError);
  EXPECT_THROW(parse_config(k, json{{"n_sites", 0}}), ConfigError);
  EXPECT_THROW(parse_config(k, json{{"local_dim", 9}}), ConfigError);
  EXPECT_THROW(parse_config(k, json{{"experiment", "simulate"}}), ConfigError);
  EXPECT_THROW(parse_config(k, json{{"schema", "dfsbench.config/0"}}), ConfigError);
  EXPECT_THROW(parse_config(k, json::array()), ConfigError);
  EXPECT_THROW(parse_config(ExperimentKind::kCertifyUniversality, json{{"seed", 1}, {"n_sites", 3}}), ConfigError);
  EXPECT_THROW(parse_config(ExperimentKind::kPulseSim, json{{"seed", 1}, {"cycle_ladder", {100, 300}}}),
               ConfigError);
  EXPECT_THROW(parse_config(ExperimentKind::kPulseSim, json{{"seed", 1}, {"ordering", "random"}}), ConfigError);
}

TEST(ParseConfig, RandomizedKindsRequireSeed) {
  EXPECT_THROW(parse_config(ExperimentKind::kSymmetrize, json::object()), ConfigError);
  EXPECT_NO_THROW(parse_config(ExperimentKind::kSymmetrize, json::object(), 7));
  EXPECT_NO_THROW(parse_config(ExperimentKind::kFindCode, json::object()));
  EXPECT_TRUE(uses_randomness(ExperimentKind::kSimulate));
  EXPECT_FALSE(uses_randomness(ExperimentKind::kDecompose));
}

TEST(ParseConfig, OverridesAndMaterializedDefaults) {
  const auto cfg = parse_config(ExperimentKind::kCertifyUniversality, json{{"seed", 3}}, 9, "elsewhere", 1e-9);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.out_dir, "elsewhere");
  EXPECT_DOUBLE_EQ(cfg.tol, 1e-9);
  EXPECT_EQ(cfg.n_sites, 4);
  EXPECT_EQ(cfg.trials, 20);
  const json j = cfg.to_json();
  EXPECT_EQ(j["schema"], kConfigSchema);
  EXPECT_EQ(j["experiment"], "certify-universality");
  EXPECT_EQ(j["trials"], 20);
  EXPECT_EQ(j["seed"], 9);
  // The materialized config parses back to itself.
  EXPECT_EQ(parse_config(ExperimentKind::kCertifyUniversality, j).to_json(), j);
}

TEST(Run, FindCodeInMemory) {
  const auto cfg = parse_config(ExperimentKind::kFindCode, json{{"n_sites", 4}});
  const auto report = run(cfg);
  EXPECT_TRUE(report.pass());
  EXPECT_EQ(report.results["code_dim"], 2);
  EXPECT_FALSE(report.checks.empty());
  const json j = report.to_json();
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["experiment"], "find-code");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["artifacts"].size(), report.artifacts.size());
}

TEST(Run, DimensionCapSurfaces) {
  const auto cfg = parse_config(ExperimentKind::kFindCode, json{{"n_sites", 5}, {"local_dim", 4}});
  EXPECT_THROW(run(cfg), dfs::DimensionCapExceeded);
}

// -- executable ---------------------------------------------------------------

class Executable : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dfsbench_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const json& doc) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << doc.dump();
    return p;
  }

  int invoke(const std::string& args) const {
    const std::string cmd = std::string(DFSBENCH_EXE) + " " + args + " > " + (dir_ / "stdout.txt").string() +
                            " 2> " + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(Executable, UnknownKeyIsConfigErrorWithoutOutput) {
  const auto cfg = write_config("bad.json", json{{"n_sites", 4}, {"bogus", 1}});
  const fs::path out = dir_ / "out";
  EXPECT_EQ(invoke("find-code --config " + cfg.string() + " --out " + out.string()), 2);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_NE(slurp(dir_ / "stderr.txt").find("bogus"), std::string::npos);
  EXPECT_EQ(invoke("no-such-command"), 2);
}

TEST_F(Executable, PassWritesReport) {
  const auto cfg = write_config("ok.json", json{{"n_sites", 4}});
  const fs::path out = dir_ / "out";
  EXPECT_EQ(invoke("find-code --config " + cfg.string() + " --out " + out.string()), 0);
  const json report = json::parse(slurp(out / "report.json"));
  EXPECT_TRUE(report["pass"].get<bool>());
  EXPECT_TRUE(fs::exists(out / "code.json"));
  EXPECT_EQ(invoke("list"), 0);
}

TEST_F(Executable, ResourceCapExitCode) {
  const auto cfg = write_config("cap.json", json{{"n_sites", 5}, {"local_dim", 4}});
  EXPECT_EQ(invoke("find-code --config " + cfg.string() + " --out " + (dir_ / "out").string()), 3);
}

TEST_F(Executable, SameSeedGivesIdenticalFiles) {
  const auto cfg = write_config("sym.json", json{{"n_sites", 2}, {"trials", 5}, {"mc_samples", 200}});
  const fs::path a = dir_ / "a";
  const fs::path b = dir_ / "b";
  ASSERT_EQ(invoke("symmetrize --seed 42 --config " + cfg.string() + " --out " + a.string()), 0);
  ASSERT_EQ(invoke("symmetrize --seed 42 --config " + cfg.string() + " --out " + b.string()), 0);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const fs::path other = b / entry.path().filename();
    ASSERT_TRUE(fs::exists(other)) << other;
    std::string left = slurp(entry.path());
    std::string right = slurp(other);
    if (entry.path().filename() == "report.json") {
      // Only the output directory differs.
      json l = json::parse(left), r = json::parse(right);
      l["config"].erase("out");
      r["config"].erase("out");
      left = l.dump();
      right = r.dump();
    }
    EXPECT_EQ(left, right) << entry.path().filename();
    ++files;
  }
  EXPECT_GE(files, 2u);
}

}  // namespace
}  // namespace dfsbench
