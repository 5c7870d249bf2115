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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "possense/cli/commands.h"
#include "possense/cli/config.h"
#include "possense/cli/manifest.h"

namespace {

namespace cli = possense::cli;

void PrintWarnings(const cli::CommandOutput& out) {
  for (const auto& w : out.warnings) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"possense: pedestrian sensing pipeline"};
  app.set_version_flag("--version", std::string(cli::kVersion));
  app.require_subcommand(1);

  std::optional<std::string> config_file;
  std::vector<std::string> overrides;
  app.add_option("--config", config_file, "key = value configuration file");
  app.add_option("--set", overrides, "override, key=value (repeatable)");

  cli::TrackOptions track;
  std::string appearance, format;
  auto* c_track = app.add_subcommand("track", "detections to tracks and world trajectories");
  c_track->add_option("--detections", track.detections)->required();
  c_track->add_option("--calib", track.calibration)->required();
  c_track->add_option("--appearance", appearance, "binary descriptor sidecar");
  c_track->add_option("--format", format)->check(CLI::IsMember({"mot", "jsonl"}));
  c_track->add_option("--out", track.out_dir)->required();

  cli::GroupOptions group;
  auto* c_group = app.add_subcommand("group", "windowed group partitions");
  c_group->add_option("--trajectories", group.trajectories)->required();
  c_group->add_option("--out", group.out_dir)->required();

  cli::MonitorOptions monitor;
  std::string monitor_zones;
  auto* c_monitor = app.add_subcommand("monitor", "distancing, contact and mask events");
  c_monitor->add_option("--trajectories", monitor.trajectories)->required();
  c_monitor->add_option("--partitions", monitor.partitions)->required();
  c_monitor->add_option("--calib", monitor.calibration)->required();
  c_monitor->add_option("--zones", monitor_zones);
  c_monitor->add_option("--out", monitor.out_dir)->required();

  cli::EvalOptions eval;
  std::string mode = "mot", gt_tracks, result_tracks;
  auto* c_eval = app.add_subcommand("eval", "MOT or grouping evaluation");
  c_eval->add_option("--gt", eval.gt)->required();
  c_eval->add_option("--results", eval.results)->required();
  c_eval->add_option("--mode", mode)->check(CLI::IsMember({"mot", "grouping"}));
  c_eval->add_option("--gt-tracks", gt_tracks);
  c_eval->add_option("--result-tracks", result_tracks);
  c_eval->add_option("--out", eval.out_dir)->required();

  cli::SynthOptions synth;
  auto* c_synth = app.add_subcommand("synth", "generate a synthetic bundle");
  c_synth->add_option("--scenario", synth.scenario)->required();
  c_synth->add_option("--out", synth.out_dir)->required();

  cli::RunAllOptions run_all;
  std::string run_zones;
  auto* c_run = app.add_subcommand("run-all", "synth, track, group, monitor, eval");
  c_run->add_option("--scenario", run_all.scenario)->required();
  c_run->add_option("--zones", run_zones);
  c_run->add_option("--out", run_all.out_dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<std::filesystem::path> file;
    if (config_file) file = *config_file;
    const cli::PipelineConfig cfg = cli::LoadConfig(
        file, overrides, [](const char* name) { return std::getenv(name); });

    if (c_track->parsed()) {
      if (!appearance.empty()) track.appearance = appearance;
      if (!format.empty()) track.format = format;
      const auto r = cli::CmdTrack(track, cfg);
      PrintWarnings(r);
      std::cout << "tracks: " << r.tracklets.size() << '\n';
    } else if (c_group->parsed()) {
      const auto r = cli::CmdGroup(group, cfg);
      PrintWarnings(r);
      std::cout << "windows: " << r.windows.size() << '\n';
    } else if (c_monitor->parsed()) {
      if (!monitor_zones.empty()) monitor.zones = monitor_zones;
      const auto r = cli::CmdMonitor(monitor, cfg);
      PrintWarnings(r);
      std::cout << "violations: " << r.violations.size()
                << "\ncontacts: " << r.contacts.size() << '\n';
    } else if (c_eval->parsed()) {
      eval.mode = mode == "grouping" ? cli::EvalMode::kGrouping
                                     : cli::EvalMode::kMot;
      if (!gt_tracks.empty()) eval.gt_tracks = gt_tracks;
      if (!result_tracks.empty()) eval.result_tracks = result_tracks;
      const auto r = cli::CmdEval(eval, cfg);
      const auto txt = eval.out_dir / (r.mot ? "mot_report.txt" : "group_report.txt");
      std::ifstream in(txt);
      std::cout << in.rdbuf();
    } else if (c_synth->parsed()) {
      PrintWarnings(cli::CmdSynth(synth, cfg));
    } else if (c_run->parsed()) {
      if (!run_zones.empty()) run_all.zones = run_zones;
      const auto r = cli::CmdRunAll(run_all, cfg);
      PrintWarnings(r);
      std::cout << r.summary.dump(2) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << cli::ErrorJson(e).dump() << '\n';
    return 2;
  }
  return 0;
}
