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

#ifndef POSSENSE_SYNTH_GENERATOR_H_
#define POSSENSE_SYNTH_GENERATOR_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "possense/evaluation/mot_metrics.h"
#include "possense/grouping/grouping_io.h"
#include "possense/model/types.h"
#include "possense/synth/rng.h"
#include "possense/synth/scenario.h"

namespace possense::synth {

struct TruthSample {
  int frame_index = 0;
  double t = 0.0;
  int agent_id = 0;
  int group_id = -1;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  bool visible = false;  // whole body box inside the image
};

struct GenerationStats {
  int visible_observations = 0;
  int dropped = 0;
  int false_positives = 0;
};

struct GeneratedBundle {
  std::uint64_t seed = 0;
  int frame_count = 0;
  std::vector<TruthSample> truth;          // by frame, then agent
  std::vector<FrameDetections> detections;  // every frame, maybe empty
  evaluation::MotSequence gt;
  grouping::GroupingTable groups_gt;
  GenerationStats stats;
  std::vector<std::string> warnings;
};

// Resolves group followers (path, speed and timing of the first member,
// plus a lateral offset) and samples missing offsets. Returned agents all
// have explicit waypoints and offsets.
std::vector<AgentSpec> ResolveAgents(const Scenario& sc, Rng& rng);

// Position of an agent at time t, nullopt while inactive.
std::optional<Eigen::Vector2d> AgentPosition(const AgentSpec& a, double t,
                                             double duration_s);

// Ideal (noise-free) box of a standing person at a ground point, nullopt if
// any part is behind the camera.
std::optional<BBox> BodyBox(const mapping::CameraModel& camera,
                            const Eigen::Vector2d& ground, double body_width,
                            double body_height);

GeneratedBundle Generate(const Scenario& sc);

// Writes world_truth.csv, detections.jsonl, appearance.bin, gt.txt and
// groups_gt.jsonl into dir. Returns the written paths.
std::vector<std::filesystem::path> WriteBundle(
    const GeneratedBundle& bundle, const std::filesystem::path& dir);

}  // namespace possense::synth

#endif  // POSSENSE_SYNTH_GENERATOR_H_
