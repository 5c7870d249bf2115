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

#ifndef POSSENSE_CLI_COMMANDS_H_
#define POSSENSE_CLI_COMMANDS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "possense/cli/config.h"
#include "possense/evaluation/grouping_metrics.h"
#include "possense/evaluation/mot_metrics.h"
#include "possense/grouping/group_detector.h"
#include "possense/mapping/world_mapping.h"
#include "possense/monitoring/contacts.h"
#include "possense/monitoring/violations.h"
#include "possense/tracking/tracker.h"

namespace possense::cli {

namespace fs = std::filesystem;

struct CommandOutput {
  std::vector<fs::path> inputs;
  std::vector<fs::path> outputs;
  std::vector<std::string> warnings;
};

struct TrackOptions {
  fs::path detections;
  fs::path calibration;
  std::optional<fs::path> appearance;
  std::optional<std::string> format;  // "mot" or "jsonl"; guessed otherwise
  fs::path out_dir;
};
struct TrackResult : CommandOutput {
  std::vector<tracking::Tracklet> tracklets;  // after length filtering
  TrajectorySet world;
  mapping::MappingStats mapping;
};
// Writes tracks.txt and trajectories.csv.
TrackResult CmdTrack(const TrackOptions& opt, const PipelineConfig& cfg);

struct GroupOptions {
  fs::path trajectories;
  fs::path out_dir;
};
struct GroupResult : CommandOutput {
  std::vector<grouping::WindowResult> windows;
};
// Writes partitions.jsonl and pair_features.csv.
GroupResult CmdGroup(const GroupOptions& opt, const PipelineConfig& cfg);

struct MonitorOptions {
  fs::path trajectories;
  fs::path partitions;
  fs::path calibration;
  std::optional<fs::path> zones;
  fs::path out_dir;
};
struct MonitorResult : CommandOutput {
  std::vector<monitoring::DistanceEvent> violations;
  std::vector<monitoring::ContactEvent> contacts;
  std::vector<monitoring::DiameterRow> diameters;
  int mask_observations = 0;
};
// Writes violations.csv, contacts.csv, diameters.csv,
// mask_observations.csv and aggregate.csv.
MonitorResult CmdMonitor(const MonitorOptions& opt, const PipelineConfig& cfg);

enum class EvalMode { kMot, kGrouping };
struct EvalOptions {
  fs::path gt;
  fs::path results;
  EvalMode mode = EvalMode::kMot;
  // Grouping mode: MOT files used to map predicted ids onto gt ids.
  std::optional<fs::path> gt_tracks;
  std::optional<fs::path> result_tracks;
  fs::path out_dir;
};
struct EvalResult : CommandOutput {
  std::optional<evaluation::MotReport> mot;
  std::optional<evaluation::GroupReport> grouping;
};
// Writes mot_report.csv/.txt or group_report.csv/.txt.
EvalResult CmdEval(const EvalOptions& opt, const PipelineConfig& cfg);

struct SynthOptions {
  fs::path scenario;
  fs::path out_dir;
};
// Writes the generated bundle plus calibration.json.
CommandOutput CmdSynth(const SynthOptions& opt, const PipelineConfig& cfg);

struct RunAllOptions {
  fs::path scenario;
  std::optional<fs::path> zones;
  fs::path out_dir;
};
struct RunAllResult : CommandOutput {
  nlohmann::ordered_json summary;
};
// synth/, track/, group/, monitor/, eval/ subdirectories plus summary.json.
RunAllResult CmdRunAll(const RunAllOptions& opt, const PipelineConfig& cfg);

// Writes run_manifest.json for a finished command.
void FinishCommand(const fs::path& out_dir, const std::string& name,
                   const PipelineConfig& cfg, const CommandOutput& out);

// {"error": code, "message": ..., "key": ...} for a failed command.
nlohmann::ordered_json ErrorJson(const std::exception& e);

}  // namespace possense::cli

#endif  // POSSENSE_CLI_COMMANDS_H_
