// Copyright 2026 The possense Authors.
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

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "json.hpp"
#include "possense/cli/commands.h"
#include "possense/cli/config.h"
#include "possense/cli/manifest.h"
#include "possense/synth/generator.h"
#include "support/fixtures.h"

namespace possense::cli {
namespace {

namespace fs = std::filesystem;
using possense::testing::TempDir;

struct Run {
  int status = -1;
  std::string output;  // stdout and stderr
};

Run RunCli(const std::string& args) {
  const std::string cmd = std::string(POSSENSE_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 512> buf;
  while (std::fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

const char* NoEnv(const char*) { return nullptr; }

TEST(Config, DefaultsValidate) {
  EXPECT_NO_THROW(LoadConfig(std::nullopt, {}, NoEnv));
}

TEST(Config, LayeredPrecedence) {
  TempDir dir("cfg");
  const auto file = dir.path() / "p.conf";
  possense::testing::WriteText(file,
                               "# comment\n[tracking]\nmax_age = 40\nn_init = 2\n");
  auto env = [](const char* name) -> const char* {
    return std::string(name) == "POSSENSE_TRACKING_N_INIT" ? "5" : nullptr;
  };
  const auto cfg = LoadConfig(file, {"tracking.max_age=12"}, env);
  EXPECT_EQ(cfg.tracking.max_age, 12);
  EXPECT_EQ(cfg.tracking.n_init, 5);
}

TEST(Config, UnknownKeyNamed) {
  try {
    LoadConfig(std::nullopt, {"tracking.max_agee=3"}, NoEnv);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "tracking.max_agee");
  }
}

TEST(Config, CanonicalRoundTrip) {
  PipelineConfig cfg;
  SetConfigValue(cfg, "grouping.tau_s", "1.5");
  PipelineConfig back;
  std::stringstream ss(cfg.Canonical());
  ApplyConfigText(back, ss);
  EXPECT_EQ(back.Canonical(), cfg.Canonical());
  EXPECT_EQ(GetConfigValue(back, "grouping.tau_s"), "1.5");
  EXPECT_EQ(EnvName("tracking.max_age"), "POSSENSE_TRACKING_MAX_AGE");
}

TEST(Manifest, KnownDigest) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(CliBinary, VersionPrints) {
  const auto r = RunCli("--version");
  EXPECT_EQ(r.status, 0);
  EXPECT_FALSE(r.output.empty());
}

TEST(CliBinary, BadKeyFailsNamingKey) {
  TempDir dir("badkey");
  const auto r = RunCli("--set tracking.max_agee=3 synth --scenario " +
                        std::string(POSSENSE_DATA_DIR) + "/demo_scenario.json --out " +
                        dir.path().string());
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.output.find("tracking.max_agee"), std::string::npos) << r.output;
}

TEST(CliBinary, MissingInputReportsIoError) {
  TempDir dir("missing");
  const auto r = RunCli("group --trajectories " + (dir.path() / "nope.csv").string() +
                        " --out " + dir.path().string());
  EXPECT_NE(r.status, 0);
  const auto j = nlohmann::json::parse(r.output.substr(r.output.find('{')));
  EXPECT_EQ(j.at("error"), "io");
}

TEST(CliBinary, EvalAgainstItselfIsPerfect) {
  TempDir dir("eval");
  const auto bundle =
      synth::Generate(possense::testing::CrossingScenario(4));
  synth::WriteBundle(bundle, dir.path() / "synth");
  const auto gt = (dir.path() / "synth" / "gt.txt").string();
  const auto r = RunCli("eval --gt " + gt + " --results " + gt + " --out " +
                        (dir.path() / "eval").string());
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("100.0"), std::string::npos) << r.output;
  EXPECT_TRUE(fs::exists(dir.path() / "eval" / "run_manifest.json"));
}

TEST(CliBinary, DemoRecoversPlantedAgents) {
  TempDir dir("demo");
  const auto r = RunCli("run-all --scenario " + std::string(POSSENSE_DATA_DIR) +
                        "/demo_scenario.json --out " + dir.path().string());
  ASSERT_EQ(r.status, 0) << r.output;
  const auto summary = nlohmann::json::parse(
      possense::testing::ReadText(dir.path() / "summary.json"));
  EXPECT_EQ(summary.at("tracks"), summary.at("planted_agents"));
  EXPECT_EQ(summary.at("id_switches"), 0);
}

}  // namespace
}  // namespace possense::cli
