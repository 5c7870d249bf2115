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

#ifndef POSSENSE_SYNTH_SCENARIO_H_
#define POSSENSE_SYNTH_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "possense/mapping/camera_model.h"
#include "possense/model/types.h"

namespace possense::synth {

struct AgentSpec {
  int agent_id = 1;  // >= 1, doubles as the ground-truth track id
  int group_id = -1;  // < 0 means walking alone
  // Ground-plane polyline. A single waypoint means standing still. Group
  // members after the first may leave it empty to follow the first member.
  std::vector<Eigen::Vector2d> waypoints;
  double speed = 1.3;  // m/s
  std::vector<double> speed_profile;  // per-segment speed, overrides speed
  std::optional<double> start_time;
  std::optional<double> end_time;  // standing agents default to the end
  // Signed sideways offset from the followed path, left positive.
  std::optional<double> lateral_offset;
  double body_width = 0.5;  // m
  double body_height = 1.7;
  ClassLabel class_label = ClassLabel::kPedestrian;
};

struct NoiseSpec {
  double pixel_sigma = 0.0;
  double dropout_prob = 0.0;
  double fp_rate = 0.0;  // expected spurious boxes per frame
};

struct AppearanceSpec {
  bool enabled = true;
  double jitter_sigma = 0.02;  // per component, before normalization
};

struct Scenario {
  std::uint64_t seed = 0;
  double duration_s = 60.0;
  double fps = 7.0;
  mapping::CameraModel camera;
  std::vector<AgentSpec> agents;
  NoiseSpec noise;
  AppearanceSpec appearance;
  // Windowing of the grouping ground truth.
  double window_s = 10.0;
  double stride_s = 10.0;

  void Validate() const;
};

// 1280x720, f = 1000 px, 6 m above the origin looking along +Y and pitched
// 30 degrees down.
mapping::CameraModel DefaultCamera();
// Same camera for any height and pitch.
mapping::CameraModel OverheadCamera(double height_m, double pitch_deg);

Scenario ScenarioFromJson(const nlohmann::json& j);
nlohmann::json ScenarioToJson(const Scenario& s);
Scenario LoadScenario(const std::filesystem::path& path);

}  // namespace possense::synth

#endif  // POSSENSE_SYNTH_SCENARIO_H_
