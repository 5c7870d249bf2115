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

#include "possense/synth/scenario.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <string>

#include "possense/model/errors.h"

namespace possense::synth {

namespace {

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kParse, "scenario: " + what);
}

double Number(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) Bad(std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

std::optional<double> MaybeNumber(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return Number(j, key, 0.0);
}

Eigen::Vector2d Point(const nlohmann::json& p) {
  if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
      !p[1].is_number()) {
    Bad("waypoints must be [x, y] pairs");
  }
  return {p[0].get<double>(), p[1].get<double>()};
}

const std::set<std::string> kTopKeys = {
    "seed", "duration_s", "fps", "camera", "agents", "noise", "appearance",
    "window_s", "stride_s"};
const std::set<std::string> kAgentKeys = {
    "agent_id", "group_id", "waypoints", "speed", "speed_profile",
    "start_time", "end_time", "lateral_offset", "body", "class"};

void RejectUnknown(const nlohmann::json& j, const std::set<std::string>& known,
                   const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) Bad("unknown key '" + k + "' in " + where);
  }
}

}  // namespace

mapping::CameraModel OverheadCamera(double height_m, double pitch_deg) {
  const double a = pitch_deg * std::numbers::pi / 180.0;
  const double s = std::sin(a);
  const double c = std::cos(a);
  Eigen::Matrix3d r;
  r << 1, 0, 0,  //
      0, -s, -c,  //
      0, c, -s;
  const Eigen::Vector3d center(0.0, 0.0, height_m);
  return mapping::CameraModel(mapping::Intrinsics{}, mapping::Distortion{}, r,
                              -r * center, ImageSize{1280, 720});
}

mapping::CameraModel DefaultCamera() { return OverheadCamera(6.0, 30.0); }

void Scenario::Validate() const {
  if (!(duration_s > 0.0)) Bad("duration_s must be > 0");
  if (!(fps > 0.0)) Bad("fps must be > 0");
  if (!(window_s > 0.0) || !(stride_s > 0.0) || stride_s > window_s) {
    Bad("need 0 < stride_s <= window_s");
  }
  if (!(noise.pixel_sigma >= 0.0)) Bad("noise.pixel_sigma must be >= 0");
  if (!(noise.dropout_prob >= 0.0 && noise.dropout_prob <= 1.0)) {
    Bad("noise.dropout_prob must be in [0, 1]");
  }
  if (!(noise.fp_rate >= 0.0)) Bad("noise.fp_rate must be >= 0");
  if (!(appearance.jitter_sigma >= 0.0)) {
    Bad("appearance.jitter_sigma must be >= 0");
  }
  std::set<int> ids;
  std::set<int> led;  // groups whose first member has been seen
  for (const auto& a : agents) {
    const std::string who = "agent " + std::to_string(a.agent_id);
    if (a.agent_id < 1) Bad("agent_id must be >= 1");
    if (!ids.insert(a.agent_id).second) Bad("duplicate " + who);
    const bool follower = a.group_id >= 0 && led.count(a.group_id) > 0;
    if (a.group_id >= 0) led.insert(a.group_id);
    if (a.waypoints.empty() && !follower) Bad(who + " needs waypoints");
    if (!(a.speed >= 0.0)) Bad(who + " speed must be >= 0");
    for (double v : a.speed_profile) {
      if (!(v >= 0.0)) Bad(who + " speed_profile must be >= 0");
    }
    if (!a.speed_profile.empty() && !a.waypoints.empty() &&
        a.speed_profile.size() + 1 != a.waypoints.size()) {
      Bad(who + " speed_profile needs one entry per segment");
    }
    if (!(a.body_width > 0.0) || !(a.body_height > 0.0)) {
      Bad(who + " body size must be > 0");
    }
  }
}

Scenario ScenarioFromJson(const nlohmann::json& j) {
  if (!j.is_object()) Bad("top level must be an object");
  RejectUnknown(j, kTopKeys, "scenario");
  Scenario s;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
      Bad("'seed' must be a nonnegative integer");
    }
    if (j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() < 0) {
      Bad("'seed' must be a nonnegative integer");
    }
    s.seed = j["seed"].get<std::uint64_t>();
  }
  s.duration_s = Number(j, "duration_s", s.duration_s);
  s.fps = Number(j, "fps", s.fps);
  s.window_s = Number(j, "window_s", s.window_s);
  s.stride_s = Number(j, "stride_s", s.stride_s);
  s.camera = j.contains("camera") ? mapping::CameraFromJson(j["camera"])
                                  : DefaultCamera();
  if (j.contains("noise")) {
    const auto& n = j["noise"];
    RejectUnknown(n, {"pixel_sigma", "dropout_prob", "fp_rate"}, "noise");
    s.noise.pixel_sigma = Number(n, "pixel_sigma", 0.0);
    s.noise.dropout_prob = Number(n, "dropout_prob", 0.0);
    s.noise.fp_rate = Number(n, "fp_rate", 0.0);
  }
  if (j.contains("appearance")) {
    const auto& a = j["appearance"];
    RejectUnknown(a, {"enabled", "jitter_sigma"}, "appearance");
    if (a.contains("enabled")) {
      if (!a["enabled"].is_boolean()) Bad("appearance.enabled must be a bool");
      s.appearance.enabled = a["enabled"].get<bool>();
    }
    s.appearance.jitter_sigma =
        Number(a, "jitter_sigma", s.appearance.jitter_sigma);
  }
  if (!j.contains("agents") || !j["agents"].is_array()) {
    Bad("'agents' must be an array");
  }
  for (const auto& aj : j["agents"]) {
    if (!aj.is_object()) Bad("each agent must be an object");
    RejectUnknown(aj, kAgentKeys, "agent");
    AgentSpec a;
    if (!aj.contains("agent_id") || !aj["agent_id"].is_number_integer()) {
      Bad("agent needs an integer 'agent_id'");
    }
    a.agent_id = aj["agent_id"].get<int>();
    if (aj.contains("group_id") && !aj["group_id"].is_null()) {
      if (!aj["group_id"].is_number_integer()) Bad("group_id must be integer");
      a.group_id = aj["group_id"].get<int>();
    }
    if (aj.contains("waypoints")) {
      for (const auto& p : aj["waypoints"]) a.waypoints.push_back(Point(p));
    }
    a.speed = Number(aj, "speed", a.speed);
    if (aj.contains("speed_profile")) {
      for (const auto& v : aj["speed_profile"]) {
        if (!v.is_number()) Bad("speed_profile entries must be numbers");
        a.speed_profile.push_back(v.get<double>());
      }
    }
    a.start_time = MaybeNumber(aj, "start_time");
    a.end_time = MaybeNumber(aj, "end_time");
    a.lateral_offset = MaybeNumber(aj, "lateral_offset");
    if (aj.contains("body")) {
      const auto& b = aj["body"];
      if (!b.is_array() || b.size() != 2 || !b[0].is_number() ||
          !b[1].is_number()) {
        Bad("body must be [width, height]");
      }
      a.body_width = b[0].get<double>();
      a.body_height = b[1].get<double>();
    }
    if (aj.contains("class")) {
      const auto label = ParseClassLabel(aj["class"].get<std::string>());
      if (!label) Bad("unknown class '" + aj["class"].get<std::string>() + "'");
      a.class_label = *label;
    }
    s.agents.push_back(std::move(a));
  }
  s.Validate();
  return s;
}

nlohmann::json ScenarioToJson(const Scenario& s) {
  nlohmann::json j;
  j["seed"] = s.seed;
  j["duration_s"] = s.duration_s;
  j["fps"] = s.fps;
  j["window_s"] = s.window_s;
  j["stride_s"] = s.stride_s;
  j["camera"] = mapping::CameraToJson(s.camera);
  j["noise"] = {{"pixel_sigma", s.noise.pixel_sigma},
                {"dropout_prob", s.noise.dropout_prob},
                {"fp_rate", s.noise.fp_rate}};
  j["appearance"] = {{"enabled", s.appearance.enabled},
                     {"jitter_sigma", s.appearance.jitter_sigma}};
  j["agents"] = nlohmann::json::array();
  for (const auto& a : s.agents) {
    nlohmann::json aj;
    aj["agent_id"] = a.agent_id;
    if (a.group_id >= 0) aj["group_id"] = a.group_id;
    if (!a.waypoints.empty()) {
      aj["waypoints"] = nlohmann::json::array();
      for (const auto& p : a.waypoints) aj["waypoints"].push_back({p.x(), p.y()});
    }
    aj["speed"] = a.speed;
    if (!a.speed_profile.empty()) aj["speed_profile"] = a.speed_profile;
    if (a.start_time) aj["start_time"] = *a.start_time;
    if (a.end_time) aj["end_time"] = *a.end_time;
    if (a.lateral_offset) aj["lateral_offset"] = *a.lateral_offset;
    aj["body"] = {a.body_width, a.body_height};
    aj["class"] = std::string(ClassLabelName(a.class_label));
    j["agents"].push_back(std::move(aj));
  }
  return j;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    Bad(e.what());
  }
  return ScenarioFromJson(j);
}

}  // namespace possense::synth
